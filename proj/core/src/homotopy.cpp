#include "kinfty/homotopy.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "kinfty/error.hpp"

namespace kinfty::simplicial {

Components pi0(const FiniteComplex& x) {
  const auto n = x.count(0);
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      auto& p = parent[static_cast<std::size_t>(v)];
      p = parent[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  };
  for (int e = 0; e < static_cast<int>(x.count(1)); ++e) {
    const int a = find(edge_source(x, e));
    const int b = find(edge_target(x, e));
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  Components out;
  out.component.assign(n, -1);
  std::vector<int> id_of_root(n, -1);
  for (int v = 0; v < static_cast<int>(n); ++v) {
    const int r = find(v);
    auto& id = id_of_root[static_cast<std::size_t>(r)];
    if (id < 0) {
      id = static_cast<int>(out.members.size());
      out.members.emplace_back();
    }
    out.component[static_cast<std::size_t>(v)] = id;
    out.members[static_cast<std::size_t>(id)].push_back(v);
  }
  return out;
}

int edge_source(const FiniteComplex& x, int edge) { return x.faces(1, edge)[1].base; }
int edge_target(const FiniteComplex& x, int edge) { return x.faces(1, edge)[0].base; }

namespace {

int step_source(const FiniteComplex& x, const SignedEdge& s) {
  return s.inverse ? edge_target(x, s.edge) : edge_source(x, s.edge);
}
int step_target(const FiniteComplex& x, const SignedEdge& s) {
  return s.inverse ? edge_source(x, s.edge) : edge_target(x, s.edge);
}

}  // namespace

void check_composable(const FiniteComplex& x, const PathClass& p) {
  if (p.basepoint < 0 || static_cast<std::size_t>(p.basepoint) >= x.count(0))
    throw InputError("path basepoint is not a vertex");
  int at = p.basepoint;
  for (std::size_t k = 0; k < p.word.size(); ++k) {
    const auto& s = p.word[k];
    if (s.edge < 0 || static_cast<std::size_t>(s.edge) >= x.count(1))
      throw InputError("path step " + std::to_string(k) + " is not an edge");
    if (step_source(x, s) != at)
      throw InputError("path step " + std::to_string(k) + " starts at " +
                       x.name(0, step_source(x, s)) + " but the path is at " + x.name(0, at));
    at = step_target(x, s);
  }
}

int path_end(const FiniteComplex& x, const PathClass& p) {
  check_composable(x, p);
  return p.word.empty() ? p.basepoint : step_target(x, p.word.back());
}

PathClass concat(const FiniteComplex& x, const PathClass& p, const PathClass& q) {
  if (path_end(x, p) != q.basepoint) throw InputError("paths are not composable");
  PathClass out = p;
  out.word.insert(out.word.end(), q.word.begin(), q.word.end());
  return out;
}

PathClass reverse(const PathClass& p, int end) {
  PathClass out{end, {}};
  for (auto it = p.word.rbegin(); it != p.word.rend(); ++it)
    out.word.push_back(SignedEdge{it->edge, !it->inverse});
  return out;
}

PathClass free_reduce(const PathClass& p) {
  PathClass out{p.basepoint, {}};
  for (const auto& s : p.word) {
    if (!out.word.empty() && out.word.back().edge == s.edge && out.word.back().inverse != s.inverse)
      out.word.pop_back();
    else
      out.word.push_back(s);
  }
  return out;
}

PathClass edge_path(const FiniteComplex& x, const SimplexRef& edge) {
  if (edge.dim() != 1 || !x.valid_ref(edge)) throw InputError("not an edge");
  if (edge.is_degenerate()) return PathClass{edge.base, {}};
  return PathClass{edge_source(x, edge.base), {SignedEdge{edge.base, false}}};
}

PathClass parse_word(const FiniteComplex& x, int basepoint, const std::string& text) {
  PathClass out{basepoint, {}};
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token.size() < 2 || (token[0] != '+' && token[0] != '-'))
      throw InputError("path step '" + token + "' must look like +edge or -edge");
    auto e = x.find(1, token.substr(1));
    if (!e) throw InputError("unknown edge '" + token.substr(1) + "'");
    out.word.push_back(SignedEdge{*e, token[0] == '-'});
  }
  check_composable(x, out);
  return out;
}

std::string render_word(const FiniteComplex& x, const PathClass& p) {
  std::string out = x.name(0, p.basepoint) + ":";
  for (const auto& s : p.word) out += std::string(" ") + (s.inverse ? "-" : "+") + x.name(1, s.edge);
  return out;
}

AbelianizedPi1::AbelianizedPi1(const FiniteComplex& x) : x_(&x) {
  const auto nv = x.count(0);
  const auto ne = x.count(1);
  std::vector<std::vector<int>> incident(nv);
  for (int e = 0; e < static_cast<int>(ne); ++e) {
    incident[static_cast<std::size_t>(edge_source(x, e))].push_back(e);
    incident[static_cast<std::size_t>(edge_target(x, e))].push_back(e);
  }
  std::vector<bool> seen(nv, false), tree(ne, false);
  for (int root = 0; root < static_cast<int>(nv); ++root) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    seen[static_cast<std::size_t>(root)] = true;
    std::queue<int> todo;
    todo.push(root);
    while (!todo.empty()) {
      const int v = todo.front();
      todo.pop();
      for (int e : incident[static_cast<std::size_t>(v)]) {
        const int w = edge_source(x, e) == v ? edge_target(x, e) : edge_source(x, e);
        if (seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = true;
        tree[static_cast<std::size_t>(e)] = true;
        todo.push(w);
      }
    }
  }
  coordinate_.assign(ne, -1);
  for (int e = 0; e < static_cast<int>(ne); ++e) {
    if (tree[static_cast<std::size_t>(e)]) continue;
    coordinate_[static_cast<std::size_t>(e)] = static_cast<int>(cycle_edges_.size());
    cycle_edges_.push_back(e);
  }

  const std::size_t g = cycle_edges_.size();
  std::vector<std::vector<std::int64_t>> rows;
  for (int t = 0; t < static_cast<int>(x.count(2)); ++t) {
    std::vector<std::int64_t> row(g, 0);
    const auto f = x.faces(2, t);
    const int sign[3] = {1, -1, 1};  // d2 + d0 - d1
    for (int k = 0; k < 3; ++k) {
      const auto& edge = f[static_cast<std::size_t>(k)];
      if (edge.is_degenerate()) continue;
      const int c = coordinate_[static_cast<std::size_t>(edge.base)];
      if (c >= 0) row[static_cast<std::size_t>(c)] += sign[k];
    }
    if (!is_zero(row)) rows.push_back(std::move(row));
  }

  // Integer row reduction to echelon form with positive pivots.
  std::size_t top = 0;
  for (std::size_t c = 0; c < g && top < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        if (best == rows.size() || std::llabs(rows[r][c]) < std::llabs(rows[best][c])) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        const std::int64_t q = rows[r][c] / rows[top][c];
        for (std::size_t k = c; k < g; ++k) rows[r][k] -= q * rows[top][k];
        if (rows[r][c] != 0) done = false;
      }
      if (done) {
        if (rows[top][c] < 0)
          for (auto& v : rows[top]) v = -v;
        basis_.emplace_back(c, rows[top]);
        ++top;
        break;
      }
    }
  }
}

std::vector<std::int64_t> AbelianizedPi1::raw(const PathClass& p) const {
  check_composable(*x_, p);
  std::vector<std::int64_t> v(cycle_edges_.size(), 0);
  for (const auto& s : p.word) {
    const int c = coordinate_[static_cast<std::size_t>(s.edge)];
    if (c >= 0) v[static_cast<std::size_t>(c)] += s.inverse ? -1 : 1;
  }
  return v;
}

std::vector<std::int64_t> AbelianizedPi1::reduce(std::vector<std::int64_t> v) const {
  for (const auto& [c, row] : basis_) {
    const std::int64_t p = row[c];
    std::int64_t q = v[c] / p;
    if (v[c] % p != 0 && v[c] < 0) --q;
    if (q == 0) continue;
    for (std::size_t k = c; k < v.size(); ++k) v[k] -= q * row[k];
  }
  return v;
}

std::vector<std::int64_t> AbelianizedPi1::class_of(const PathClass& loop) const {
  if (path_end(*x_, loop) != loop.basepoint) throw InputError("path is not a loop");
  return reduce(raw(loop));
}

bool is_zero(const std::vector<std::int64_t>& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t a) { return a == 0; });
}

}  // namespace kinfty::simplicial
