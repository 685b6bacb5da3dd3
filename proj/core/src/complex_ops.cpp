#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "kinfty/error.hpp"
#include "kinfty/simplicial.hpp"

namespace kinfty::simplicial {
namespace {

std::string vertex_set_name(const std::vector<int>& vs, bool compact) {
  std::string out;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (k > 0 && !compact) out += '-';
    out += std::to_string(vs[k]);
  }
  return out;
}

}  // namespace

FiniteComplex complex_from_vertex_sets(int vertex_count,
                                       const std::vector<std::vector<int>>& generators,
                                       int dim_bound) {
  std::set<std::vector<int>> closed;
  for (const auto& g : generators) {
    if (g.empty()) continue;
    if (!std::is_sorted(g.begin(), g.end()) ||
        std::adjacent_find(g.begin(), g.end()) != g.end())
      throw InputError("vertex sets must be strictly increasing");
    if (g.front() < 0 || g.back() >= vertex_count) throw InputError("vertex out of range");
    const auto n = g.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<int> sub;
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (std::size_t{1} << b)) sub.push_back(g[b]);
      closed.insert(std::move(sub));
    }
  }
  std::vector<std::vector<int>> ordered(closed.begin(), closed.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });

  const bool compact = vertex_count <= 10;
  FiniteComplex out(dim_bound);
  std::map<std::vector<int>, int> index;
  for (const auto& s : ordered) {
    const int dim = static_cast<int>(s.size()) - 1;
    if (dim == 0) {
      index[s] = out.add_vertex(std::to_string(s.front()));
      continue;
    }
    std::vector<SimplexRef> faces;
    for (int i = 0; i <= dim; ++i) {
      auto f = s;
      f.erase(f.begin() + i);
      faces.push_back(nondegenerate(dim - 1, index.at(f)));
    }
    index[s] = out.add_simplex(vertex_set_name(s, compact), std::move(faces));
  }
  return out;
}

FiniteComplex standard_simplex(int n, int dim_bound) {
  if (n < 0 || n > dim_bound)
    throw InputError("standard simplex dimension " + std::to_string(n) + " outside budget");
  std::vector<int> all(static_cast<std::size_t>(n) + 1);
  std::iota(all.begin(), all.end(), 0);
  return complex_from_vertex_sets(n + 1, {all}, dim_bound);
}

FiniteComplex boundary_complex(int n, int dim_bound) {
  if (n < 1) throw InputError("boundary complex needs n >= 1");
  if (n - 1 > dim_bound) throw InputError("boundary complex exceeds dimension budget");
  std::vector<std::vector<int>> facets;
  for (int drop = 0; drop <= n; ++drop) {
    std::vector<int> f;
    for (int v = 0; v <= n; ++v)
      if (v != drop) f.push_back(v);
    facets.push_back(std::move(f));
  }
  return complex_from_vertex_sets(n + 1, facets, dim_bound);
}

FiniteComplex horn_complex(int n, int i, int dim_bound) {
  if (n < 1) throw InputError("horn needs n >= 1");
  if (i < 0 || i > n) throw InputError("horn index out of range");
  if (n - 1 > dim_bound) throw InputError("horn exceeds dimension budget");
  std::vector<std::vector<int>> facets;
  for (int drop = 0; drop <= n; ++drop) {
    if (drop == i) continue;
    std::vector<int> f;
    for (int v = 0; v <= n; ++v)
      if (v != drop) f.push_back(v);
    facets.push_back(std::move(f));
  }
  // Keep the original vertex labels (Λ¹₀ is the vertex {0}).
  return complex_from_vertex_sets(n + 1, facets, dim_bound);
}

std::vector<int> append_disjoint(FiniteComplex& into, const FiniteComplex& from,
                                 std::string_view prefix) {
  if (from.top_dim() > into.dim_bound()) throw InputError("disjoint union exceeds dimension bound");
  std::vector<int> offset;
  for (int d = 0; d <= from.dim_bound(); ++d) offset.push_back(static_cast<int>(into.count(d)));
  const std::string pre(prefix);
  for (int d = 0; d <= from.top_dim(); ++d) {
    for (int s = 0; s < static_cast<int>(from.count(d)); ++s) {
      if (d == 0) {
        into.add_vertex(pre + from.name(0, s));
        continue;
      }
      std::vector<SimplexRef> faces;
      for (const auto& f : from.faces(d, s)) {
        SimplexRef g = f;
        g.base += offset[static_cast<std::size_t>(f.base_dim)];
        faces.push_back(std::move(g));
      }
      into.add_simplex(pre + from.name(d, s), std::move(faces));
    }
  }
  return offset;
}

ProductComplex product(const FiniteComplex& x, const FiniteComplex& y) {
  const int budget = std::min(x.dim_bound(), y.dim_bound());
  ProductComplex out{FiniteComplex(budget), false, {}, {}};
  if (x.empty() || y.empty()) return out;
  const int full = x.top_dim() + y.top_dim();
  const int top = std::min(full, budget);
  out.truncated = full > budget;
  out.left.resize(static_cast<std::size_t>(top) + 1);
  out.right.resize(static_cast<std::size_t>(top) + 1);

  std::vector<std::map<std::pair<SimplexRef, SimplexRef>, int>> index(
      static_cast<std::size_t>(top) + 1);

  for (int d = 0; d <= top; ++d) {
    const auto xs = x.simplexes(d);
    const auto ys = y.simplexes(d);
    for (const auto& a : xs) {
      for (const auto& b : ys) {
        bool common_repeat = false;
        for (int t = 0; t < d && !common_repeat; ++t) {
          const auto ut = static_cast<std::size_t>(t);
          common_repeat = a.surj[ut] == a.surj[ut + 1] && b.surj[ut] == b.surj[ut + 1];
        }
        if (common_repeat) continue;
        const std::string name = "(" + x.describe(a) + "," + y.describe(b) + ")";
        int id = 0;
        if (d == 0) {
          id = out.complex.add_vertex(name);
        } else {
          std::vector<SimplexRef> faces;
          for (int i = 0; i <= d; ++i) {
            auto fa = x.face(a, i);
            auto fb = y.face(b, i);
            // Collapse positions where both components repeat.
            std::vector<int> zeta{0};
            for (int t = 0; t + 1 < d; ++t) {
              const auto ut = static_cast<std::size_t>(t);
              const bool rep = fa.surj[ut] == fa.surj[ut + 1] && fb.surj[ut] == fb.surj[ut + 1];
              zeta.push_back(zeta.back() + (rep ? 0 : 1));
            }
            const int r = zeta.back();
            SimplexRef ra{fa.base_dim, fa.base, std::vector<int>(static_cast<std::size_t>(r) + 1)};
            SimplexRef rb{fb.base_dim, fb.base, std::vector<int>(static_cast<std::size_t>(r) + 1)};
            for (std::size_t t = 0; t < zeta.size(); ++t) {
              ra.surj[static_cast<std::size_t>(zeta[t])] = fa.surj[t];
              rb.surj[static_cast<std::size_t>(zeta[t])] = fb.surj[t];
            }
            const int target =
                index[static_cast<std::size_t>(r)].at({std::move(ra), std::move(rb)});
            faces.push_back(SimplexRef{r, target, std::move(zeta)});
          }
          id = out.complex.add_simplex(name, std::move(faces));
        }
        index[static_cast<std::size_t>(d)].emplace(std::make_pair(a, b), id);
        out.left[static_cast<std::size_t>(d)].push_back(a);
        out.right[static_cast<std::size_t>(d)].push_back(b);
      }
    }
  }
  return out;
}

FiniteComplex join(const FiniteComplex& x, const FiniteComplex& y, int dim_bound) {
  const int top = std::max({x.top_dim(), y.top_dim(), x.top_dim() + y.top_dim() + 1});
  if (top > dim_bound)
    throw InputError("join of dimension " + std::to_string(top) + " exceeds budget " +
                     std::to_string(dim_bound));
  FiniteComplex out(dim_bound);
  const auto ud = static_cast<std::size_t>(dim_bound) + 1;
  std::vector<std::vector<int>> xid(ud), yid(ud);
  // (dim σ, σ, dim τ, τ) -> index of σ⋆τ in dimension dim σ + dim τ + 1.
  std::map<std::tuple<int, int, int, int>, int> pid;

  auto shifted = [](const SimplexRef& f, const std::vector<std::vector<int>>& ids) {
    SimplexRef g = f;
    g.base = ids[static_cast<std::size_t>(f.base_dim)][static_cast<std::size_t>(f.base)];
    return g;
  };

  for (int n = 0; n <= top; ++n) {
    const auto un = static_cast<std::size_t>(n);
    for (int s = 0; s < static_cast<int>(x.count(n)); ++s) {
      if (n == 0) {
        xid[un].push_back(out.add_vertex(x.name(0, s)));
      } else {
        std::vector<SimplexRef> faces;
        for (const auto& f : x.faces(n, s)) faces.push_back(shifted(f, xid));
        xid[un].push_back(out.add_simplex(x.name(n, s), std::move(faces)));
      }
    }
    for (int s = 0; s < static_cast<int>(y.count(n)); ++s) {
      if (n == 0) {
        yid[un].push_back(out.add_vertex(y.name(0, s) + "'"));
      } else {
        std::vector<SimplexRef> faces;
        for (const auto& f : y.faces(n, s)) faces.push_back(shifted(f, yid));
        yid[un].push_back(out.add_simplex(y.name(n, s) + "'", std::move(faces)));
      }
    }
    for (int i = 0; i + 1 <= n; ++i) {
      const int j = n - 1 - i;
      for (int s = 0; s < static_cast<int>(x.count(i)); ++s) {
        for (int t = 0; t < static_cast<int>(y.count(j)); ++t) {
          std::vector<SimplexRef> faces;
          for (int k = 0; k <= n; ++k) {
            if (k <= i) {
              if (i == 0) {
                faces.push_back(nondegenerate(j, yid[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)]));
                continue;
              }
              const auto f = x.face(nondegenerate(i, s), k);
              const int pd = f.base_dim + 1 + j;
              SimplexRef g{pd, pid.at({f.base_dim, f.base, j, t}), f.surj};
              for (int u = 0; u <= j; ++u) g.surj.push_back(f.base_dim + 1 + u);
              faces.push_back(std::move(g));
            } else {
              if (j == 0) {
                faces.push_back(nondegenerate(i, xid[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]));
                continue;
              }
              const auto f = y.face(nondegenerate(j, t), k - i - 1);
              const int pd = i + 1 + f.base_dim;
              SimplexRef g{pd, pid.at({i, s, f.base_dim, f.base}), {}};
              for (int u = 0; u <= i; ++u) g.surj.push_back(u);
              for (int v : f.surj) g.surj.push_back(i + 1 + v);
              faces.push_back(std::move(g));
            }
          }
          const int id = out.add_simplex(x.name(i, s) + "*" + y.name(j, t) + "'", std::move(faces));
          pid.emplace(std::make_tuple(i, s, j, t), id);
        }
      }
    }
  }
  return out;
}

std::optional<std::vector<std::vector<int>>> find_isomorphism(const FiniteComplex& x,
                                                              const FiniteComplex& y) {
  if (x.f_vector() != y.f_vector()) return std::nullopt;
  const int n0 = static_cast<int>(x.count(0));
  if (n0 > 9) throw InputError("isomorphism search limited to 9 vertices");
  const int top = x.top_dim();

  std::vector<int> perm(static_cast<std::size_t>(n0));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<std::vector<int>> map(static_cast<std::size_t>(std::max(top, 0)) + 1);
    map[0] = perm;
    bool ok = true;
    for (int d = 1; d <= top && ok; ++d) {
      // Bucket Y's d-simplexes by face tuple, then match X's in order.
      std::map<std::vector<SimplexRef>, std::vector<int>> buckets;
      for (int t = static_cast<int>(y.count(d)) - 1; t >= 0; --t) {
        auto fs = y.faces(d, t);
        buckets[std::vector<SimplexRef>(fs.begin(), fs.end())].push_back(t);
      }
      for (int s = 0; s < static_cast<int>(x.count(d)) && ok; ++s) {
        std::vector<SimplexRef> image;
        for (const auto& f : x.faces(d, s)) {
          SimplexRef g = f;
          g.base = map[static_cast<std::size_t>(f.base_dim)][static_cast<std::size_t>(f.base)];
          image.push_back(std::move(g));
        }
        auto it = buckets.find(image);
        if (it == buckets.end() || it->second.empty()) {
          ok = false;
          break;
        }
        map[static_cast<std::size_t>(d)].push_back(it->second.back());
        it->second.pop_back();
      }
    }
    if (ok) return map;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace kinfty::simplicial
