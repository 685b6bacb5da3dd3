#include "kinfty/hpo.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "kinfty/error.hpp"

namespace kinfty::hpo {

WeakDomain::WeakDomain(FiniteComplex carrier, const std::vector<std::pair<int, int>>& order,
                       std::optional<int> bottom)
    : carrier_(std::move(carrier)), n_(static_cast<int>(carrier_.count(0))), bottom_(bottom) {
  const auto n = static_cast<std::size_t>(n_);
  std::set<std::pair<int, int>> gens;
  for (auto [x, y] : order) {
    if (x < 0 || y < 0 || x >= n_ || y >= n_) throw InputError("order pair names a missing vertex");
    if (x != y) gens.emplace(x, y);
  }
  generators_.assign(gens.begin(), gens.end());
  successors_.assign(n, {});
  for (auto [x, y] : generators_) successors_[static_cast<std::size_t>(x)].push_back(y);

  leq_.assign(n * n, 0);
  for (int x = 0; x < n_; ++x) {
    std::vector<int> stack{x};
    leq_[index(x, x)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : successors_[static_cast<std::size_t>(v)]) {
        if (leq_[index(x, w)]) continue;
        leq_[index(x, w)] = 1;
        stack.push_back(w);
      }
    }
  }

  rep_.resize(n);
  for (int x = 0; x < n_; ++x) {
    int best = x;
    for (int y = 0; y < n_; ++y)
      if (equiv(x, y) && name(y) < name(best)) best = y;
    rep_[static_cast<std::size_t>(x)] = best;
  }

  if (bottom_) {
    const int b = *bottom_;
    if (b < 0 || b >= n_) throw InputError("bottom is not a vertex");
    for (int x = 0; x < n_; ++x)
      if (!leq(b, x)) throw InputError("bottom " + name(b) + " is not below " + name(x));
  }
}

WeakDomain WeakDomain::from_document(const simplicial::Document& doc) {
  std::vector<std::pair<int, int>> order;
  for (const auto& [a, b] : doc.order) order.emplace_back(*doc.complex.find(0, a), *doc.complex.find(0, b));
  std::optional<int> bottom;
  if (doc.bottom) bottom = *doc.complex.find(0, *doc.bottom);
  return WeakDomain(doc.complex, order, bottom);
}

int WeakDomain::vertex(std::string_view name) const {
  auto v = carrier_.find(0, name);
  if (!v) throw InputError("unknown vertex '" + std::string(name) + "'");
  return *v;
}

std::vector<int> WeakDomain::vertices() const {
  std::vector<int> out(static_cast<std::size_t>(n_));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::optional<std::vector<int>> WeakDomain::witness(int x, int y) const {
  if (!leq(x, y)) return std::nullopt;
  if (x == y) return std::vector<int>{};
  std::vector<int> parent(static_cast<std::size_t>(n_), -1);
  std::queue<int> todo;
  todo.push(x);
  parent[static_cast<std::size_t>(x)] = x;
  while (!todo.empty()) {
    const int v = todo.front();
    todo.pop();
    if (v == y) break;
    for (int w : successors_[static_cast<std::size_t>(v)]) {
      if (parent[static_cast<std::size_t>(w)] >= 0) continue;
      parent[static_cast<std::size_t>(w)] = v;
      todo.push(w);
    }
  }
  std::vector<int> chain{y};
  while (chain.back() != x) chain.push_back(parent[static_cast<std::size_t>(chain.back())]);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::vector<VertexSet> WeakDomain::classes() const {
  std::map<int, VertexSet> by_rep;
  for (int x = 0; x < n_; ++x) by_rep[rep(x)].push_back(x);
  std::vector<VertexSet> out;
  for (auto& [r, members] : by_rep) out.push_back(std::move(members));
  return out;
}

VertexSet WeakDomain::upper_bounds(const VertexSet& xs) const {
  VertexSet out;
  for (int u = 0; u < n_; ++u)
    if (std::all_of(xs.begin(), xs.end(), [&](int x) { return leq(x, u); })) out.push_back(u);
  return out;
}

std::optional<int> WeakDomain::lub(const VertexSet& xs) const {
  const auto ub = upper_bounds(xs);
  for (int u : ub)
    if (std::all_of(ub.begin(), ub.end(), [&](int v) { return leq(u, v); })) return rep(u);
  return std::nullopt;
}

bool WeakDomain::is_directed(const VertexSet& xs) const {
  if (xs.empty()) return false;
  for (int x : xs)
    for (int y : xs) {
      const bool bounded =
          std::any_of(xs.begin(), xs.end(), [&](int z) { return leq(x, z) && leq(y, z); });
      if (!bounded) return false;
    }
  return true;
}

int WeakDomain::sup(const VertexSet& xs) const {
  if (!is_directed(xs)) throw SemanticError("set " + render_set(xs) + " is not directed");
  auto l = lub(xs);
  if (!l) throw SemanticError("directed set " + render_set(xs) + " has no least upper bound");
  return *l;
}

std::string WeakDomain::render_set(const VertexSet& xs) const {
  std::string out = "{";
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ", ";
    out += name(xs[k]);
  }
  return out + "}";
}

PreorderReport check_preorder(const WeakDomain& k) {
  PreorderReport r;
  const int n = k.size();
  for (int x = 0; x < n; ++x) {
    if (!k.leq(x, x)) {
      r.reflexive = false;
      r.failure = "not reflexive at " + k.name(x);
      return r;
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!k.leq(x, y)) continue;
      for (int z = 0; z < n; ++z)
        if (k.leq(y, z) && !k.leq(x, z)) {
          r.transitive = false;
          r.failure = "not transitive at " + k.name(x) + " <= " + k.name(y) + " <= " + k.name(z);
          return r;
        }
    }
  std::set<std::pair<int, int>> gens(k.generators().begin(), k.generators().end());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto w = k.witness(x, y);
      if (w.has_value() != k.leq(x, y) || (w && w != k.witness(x, y))) {
        r.hom_discipline = false;
        r.failure = "witness for " + k.name(x) + " <= " + k.name(y) + " is not a single canonical chain";
        return r;
      }
      if (!w || w->empty()) continue;
      bool chain_ok = w->front() == x && w->back() == y;
      for (std::size_t t = 0; chain_ok && t + 1 < w->size(); ++t)
        chain_ok = gens.contains({(*w)[t], (*w)[t + 1]});
      if (!chain_ok) {
        r.hom_discipline = false;
        r.failure = "witness for " + k.name(x) + " <= " + k.name(y) + " is not a chain of generators";
        return r;
      }
    }
  return r;
}

WeakDomain product_domain(const WeakDomain& k, const WeakDomain& l) {
  if (!k.pointed() || !l.pointed()) throw InputError("product domain needs pointed factors");
  auto carrier = simplicial::product(k.carrier(), l.carrier()).complex;
  const int m = l.size();
  auto id = [m](int x, int y) { return x * m + y; };
  std::vector<std::pair<int, int>> order;
  for (auto [x, y] : k.generators())
    for (int b = 0; b < m; ++b) order.emplace_back(id(x, b), id(y, b));
  for (auto [x, y] : l.generators())
    for (int a = 0; a < k.size(); ++a) order.emplace_back(id(a, x), id(a, y));
  return WeakDomain(std::move(carrier), order, id(*k.bottom(), *l.bottom()));
}

bool is_compact(const WeakDomain& k, int x, int exhaustive_limit) {
  const int n = k.size();
  if (n > exhaustive_limit) {
    // A finite directed set contains an upper bound z of itself, so
    // x ≾ ⋁X ≃ z already names the member.
    return true;
  }
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet xs;
    for (int v = 0; v < n; ++v)
      if (mask & (std::uint64_t{1} << v)) xs.push_back(v);
    if (!k.is_directed(xs)) continue;
    auto s = k.lub(xs);
    if (!s || !k.leq(x, *s)) continue;
    if (std::none_of(xs.begin(), xs.end(), [&](int m) { return k.leq(x, m); })) return false;
  }
  return true;
}

AlgebraicReport is_algebraic(const WeakDomain& k) {
  AlgebraicReport r;
  if (!k.pointed()) {
    r.precondition_failed = true;
    r.message = "no bottom: x↓ may be empty and then not directed";
    return r;
  }
  std::vector<bool> compact(static_cast<std::size_t>(k.size()));
  for (int c = 0; c < k.size(); ++c) compact[static_cast<std::size_t>(c)] = is_compact(k, c);
  for (int x = 0; x < k.size(); ++x) {
    VertexSet down;
    for (int c = 0; c < k.size(); ++c)
      if (compact[static_cast<std::size_t>(c)] && k.leq(c, x)) down.push_back(c);
    const bool ok = k.is_directed(down) && k.lub(down) && k.equiv(*k.lub(down), x);
    if (!ok) r.failures.push_back(x);
  }
  r.passed = r.failures.empty();
  if (!r.passed) r.message = "x is not the supremum of its compacts at " + k.render_set(r.failures);
  return r;
}

BoundedCompleteReport is_bounded_complete(const WeakDomain& k, int exhaustive_limit) {
  BoundedCompleteReport r;
  const int n = k.size();
  auto check = [&](const VertexSet& xs) {
    ++r.subsets_checked;
    if (k.upper_bounds(xs).empty()) return true;
    return k.lub(xs).has_value();
  };
  if (n <= exhaustive_limit) {
    r.exhaustive = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      VertexSet xs;
      for (int v = 0; v < n; ++v)
        if (mask & (std::uint64_t{1} << v)) xs.push_back(v);
      if (!check(xs)) {
        r.failing_subset = xs;
        return r;
      }
    }
    r.passed = true;
    return r;
  }
  if (!check({})) {
    r.failing_subset = VertexSet{};
    return r;
  }
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (!check({x, y})) {
        r.failing_subset = VertexSet{x, y};
        return r;
      }
  r.passed = true;
  return r;
}

WeakDomain build_N_plus(int max_sphere_dim, int dim_bound) {
  if (max_sphere_dim < 0 || max_sphere_dim > dim_bound - 1)
    throw InputError("sphere dimension " + std::to_string(max_sphere_dim) +
                     " needs dimension bound above it");
  FiniteComplex carrier(dim_bound);
  for (int k = 0; k <= max_sphere_dim; ++k)
    simplicial::append_disjoint(carrier, simplicial::boundary_complex(k + 1, dim_bound),
                                "S" + std::to_string(k) + ".");
  const int bot = carrier.add_vertex("bot");
  std::vector<std::pair<int, int>> order;
  for (int v = 0; v < bot; ++v) order.emplace_back(bot, v);
  return WeakDomain(std::move(carrier), order, bot);
}

WeakDomain chain_domain(int n) {
  if (n < 1) throw InputError("chain needs at least one element");
  FiniteComplex carrier;
  std::vector<std::pair<int, int>> order;
  for (int v = 0; v < n; ++v) {
    carrier.add_vertex(std::to_string(v));
    if (v > 0) order.emplace_back(v - 1, v);
  }
  return WeakDomain(std::move(carrier), order, 0);
}

WeakDomain butterfly_domain() {
  FiniteComplex carrier;
  for (const char* name : {"bot", "a", "b", "c", "d"}) carrier.add_vertex(name);
  return WeakDomain(std::move(carrier),
                    {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}}, 0);
}

WeakDomain point_domain() {
  FiniteComplex carrier;
  carrier.add_vertex("0");
  return WeakDomain(std::move(carrier), {}, 0);
}

namespace {

// Posets on {0..n-1} whose order extends the natural one, as strict-order
// bitmasks over pairs i < j.
std::vector<std::vector<std::vector<bool>>> natural_posets(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::vector<std::vector<bool>>> out;
  const auto np = pairs.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << np); ++mask) {
    std::vector<std::vector<bool>> lt(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    for (std::size_t p = 0; p < np; ++p)
      if (mask & (std::uint64_t{1} << p))
        lt[static_cast<std::size_t>(pairs[p].first)][static_cast<std::size_t>(pairs[p].second)] = true;
    bool transitive = true;
    for (int i = 0; i < n && transitive; ++i)
      for (int j = 0; j < n && transitive; ++j)
        for (int k = 0; k < n && transitive; ++k) {
          const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j),
                     uk = static_cast<std::size_t>(k);
          if (lt[ui][uj] && lt[uj][uk] && !lt[ui][uk]) transitive = false;
        }
    if (transitive) out.push_back(std::move(lt));
  }
  return out;
}

std::vector<bool> canonical_form(const std::vector<std::vector<bool>>& lt) {
  const int n = static_cast<int>(lt.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<bool> best;
  do {
    std::vector<bool> code;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        code.push_back(lt[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]
                         [static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])]);
    if (best.empty() || code < best) best = std::move(code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<WeakDomain> enumerate_pointed_posets(int max_size) {
  if (max_size > 7) throw InputError("poset enumeration is limited to 7 elements");
  std::vector<WeakDomain> out;
  for (int size = 1; size <= max_size; ++size) {
    // A pointed poset is a bottom added below an arbitrary poset.
    const int rest = size - 1;
    std::set<std::vector<bool>> seen;
    for (const auto& lt : natural_posets(rest)) {
      if (!seen.insert(canonical_form(lt)).second) continue;
      FiniteComplex carrier;
      carrier.add_vertex("bot");
      for (int v = 0; v < rest; ++v) carrier.add_vertex("p" + std::to_string(v));
      std::vector<std::pair<int, int>> order;
      for (int v = 1; v <= rest; ++v) order.emplace_back(0, v);
      for (int i = 0; i < rest; ++i)
        for (int j = 0; j < rest; ++j)
          if (lt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) order.emplace_back(i + 1, j + 1);
      out.emplace_back(std::move(carrier), order, 0);
    }
  }
  return out;
}

}  // namespace kinfty::hpo
