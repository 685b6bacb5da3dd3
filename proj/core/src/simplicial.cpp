#include "kinfty/simplicial.hpp"

#include <algorithm>
#include <sstream>

#include "kinfty/error.hpp"

namespace kinfty::simplicial {

SimplexRef nondegenerate(int dim, int index) {
  SimplexRef ref{dim, index, std::vector<int>(static_cast<std::size_t>(dim) + 1)};
  for (int t = 0; t <= dim; ++t) ref.surj[static_cast<std::size_t>(t)] = t;
  return ref;
}

std::vector<std::vector<int>> surjections(int m, int k) {
  std::vector<std::vector<int>> out;
  if (m < 0 || k < 0 || k > m) return out;
  // A surjection is fixed by the k positions t in [1, m] where it steps up.
  std::vector<int> current;
  current.reserve(static_cast<std::size_t>(m) + 1);
  auto rec = [&](auto&& self, int t, int value) -> void {
    if (t > m) {
      if (value == k) out.push_back(current);
      return;
    }
    // Remaining positions must still be able to reach k.
    if (k - value > m - t + 1) return;
    if (t == 0) {
      current.push_back(0);
      self(self, 1, 0);
      current.pop_back();
      return;
    }
    current.push_back(value);
    self(self, t + 1, value);
    current.pop_back();
    if (value < k) {
      current.push_back(value + 1);
      self(self, t + 1, value + 1);
      current.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

FiniteComplex::FiniteComplex(int dim_bound) : dim_bound_(dim_bound) {
  if (dim_bound < 0) throw InputError("dimension bound must be non-negative");
  cells_.resize(static_cast<std::size_t>(dim_bound) + 1);
  by_name_.resize(static_cast<std::size_t>(dim_bound) + 1);
}

int FiniteComplex::top_dim() const noexcept {
  for (int d = dim_bound_; d >= 0; --d)
    if (!cells_[static_cast<std::size_t>(d)].empty()) return d;
  return -1;
}

std::size_t FiniteComplex::count(int dim) const noexcept {
  if (dim < 0 || dim > dim_bound_) return 0;
  return cells_[static_cast<std::size_t>(dim)].size();
}

std::vector<std::size_t> FiniteComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (int d = 0; d <= top_dim(); ++d) f.push_back(count(d));
  return f;
}

int FiniteComplex::add_vertex(std::string name) {
  auto& names = by_name_[0];
  if (names.contains(name)) throw InputError("duplicate vertex name '" + name + "'");
  const int index = static_cast<int>(cells_[0].size());
  names.emplace(name, index);
  cells_[0].push_back(Cell{std::move(name), {}});
  return index;
}

int FiniteComplex::add_simplex(std::string name, std::vector<SimplexRef> faces) {
  const int dim = static_cast<int>(faces.size()) - 1;
  if (dim < 1) throw InputError("simplex '" + name + "' needs at least two faces");
  if (dim > dim_bound_)
    throw InputError("simplex '" + name + "' of dimension " + std::to_string(dim) +
                     " exceeds dimension bound " + std::to_string(dim_bound_));
  for (const auto& f : faces) {
    if (f.dim() != dim - 1 || !valid_ref(f))
      throw InputError("simplex '" + name + "' has an invalid face reference");
  }
  if (auto problem = identity_problem(dim, faces); !problem.empty())
    throw InputError("simplex '" + name + "': " + problem);
  auto& names = by_name_[static_cast<std::size_t>(dim)];
  if (names.contains(name)) throw InputError("duplicate simplex name '" + name + "'");
  auto& cells = cells_[static_cast<std::size_t>(dim)];
  const int index = static_cast<int>(cells.size());
  names.emplace(name, index);
  cells.push_back(Cell{std::move(name), std::move(faces)});
  return index;
}

const std::string& FiniteComplex::name(int dim, int index) const {
  return cells_.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(index)).name;
}

std::optional<int> FiniteComplex::find(int dim, std::string_view name) const {
  if (dim < 0 || dim > dim_bound_) return std::nullopt;
  const auto& names = by_name_[static_cast<std::size_t>(dim)];
  if (auto it = names.find(std::string(name)); it != names.end()) return it->second;
  return std::nullopt;
}

std::span<const SimplexRef> FiniteComplex::faces(int dim, int index) const {
  return cells_.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(index)).faces;
}

bool FiniteComplex::valid_ref(const SimplexRef& s) const noexcept {
  if (s.base_dim < 0 || s.base_dim > dim_bound_ || s.surj.empty()) return false;
  if (s.base < 0 || static_cast<std::size_t>(s.base) >= count(s.base_dim)) return false;
  if (s.surj.front() != 0 || s.surj.back() != s.base_dim) return false;
  for (std::size_t t = 1; t < s.surj.size(); ++t) {
    const int step = s.surj[t] - s.surj[t - 1];
    if (step != 0 && step != 1) return false;
  }
  return true;
}

SimplexRef FiniteComplex::face(const SimplexRef& s, int i) const {
  const int m = s.dim();
  if (m < 1 || i < 0 || i > m) throw InputError("face index out of range");
  const auto ui = static_cast<std::size_t>(i);
  const int hit = s.surj[ui];
  std::vector<int> rest;
  rest.reserve(static_cast<std::size_t>(m));
  for (int t = 0; t <= m; ++t)
    if (t != i) rest.push_back(s.surj[static_cast<std::size_t>(t)]);
  const bool still_onto = (i > 0 && s.surj[ui - 1] == hit) || (i < m && s.surj[ui + 1] == hit);
  if (still_onto) return SimplexRef{s.base_dim, s.base, std::move(rest)};
  // The composite misses base vertex `hit`: it factors through d_hit of the base.
  for (int& v : rest)
    if (v > hit) --v;
  const SimplexRef& f = faces(s.base_dim, s.base)[static_cast<std::size_t>(hit)];
  SimplexRef out{f.base_dim, f.base, {}};
  out.surj.reserve(rest.size());
  for (int v : rest) out.surj.push_back(f.surj[static_cast<std::size_t>(v)]);
  return out;
}

SimplexRef FiniteComplex::degeneracy(const SimplexRef& s, int j) const {
  if (j < 0 || j > s.dim()) throw InputError("degeneracy index out of range");
  SimplexRef out = s;
  out.surj.insert(out.surj.begin() + j, s.surj[static_cast<std::size_t>(j)]);
  return out;
}

int FiniteComplex::vertex(const SimplexRef& s, int t) const {
  int dim = s.base_dim;
  int index = s.base;
  int local = s.surj.at(static_cast<std::size_t>(t));
  while (dim > 0) {
    // Drop a face that keeps the wanted vertex.
    const int drop = local == dim ? 0 : dim;
    const SimplexRef& f = faces(dim, index)[static_cast<std::size_t>(drop)];
    const int next_local = drop == 0 ? local - 1 : local;
    local = f.surj[static_cast<std::size_t>(next_local)];
    dim = f.base_dim;
    index = f.base;
  }
  return index;
}

std::vector<int> FiniteComplex::vertices(const SimplexRef& s) const {
  std::vector<int> out;
  for (int t = 0; t <= s.dim(); ++t) out.push_back(vertex(s, t));
  return out;
}

std::vector<SimplexRef> FiniteComplex::simplexes(int m) const {
  std::vector<SimplexRef> out;
  if (m < 0) return out;
  for (int k = std::min(m, dim_bound_); k >= 0; --k) {
    const auto maps = surjections(m, k);
    for (int b = 0; b < static_cast<int>(count(k)); ++b)
      for (const auto& surj : maps) out.push_back(SimplexRef{k, b, surj});
  }
  return out;
}

std::string FiniteComplex::describe(const SimplexRef& s) const {
  std::string inner = name(s.base_dim, s.base);
  // Repeats at positions j, applied innermost-first in ascending order.
  for (std::size_t t = 0; t + 1 < s.surj.size(); ++t) {
    if (s.surj[t] == s.surj[t + 1]) inner = "s" + std::to_string(t) + "(" + inner + ")";
  }
  return inner;
}

std::string FiniteComplex::identity_problem(int dim, const std::vector<SimplexRef>& faces) const {
  if (dim < 2) return {};
  for (int j = 1; j <= dim; ++j) {
    for (int i = 0; i < j; ++i) {
      const auto lhs = face(faces[static_cast<std::size_t>(j)], i);
      const auto rhs = face(faces[static_cast<std::size_t>(i)], j - 1);
      if (lhs != rhs) {
        std::ostringstream msg;
        msg << "d" << i << " d" << j << " = " << describe(lhs) << " but d" << (j - 1) << " d" << i
            << " = " << describe(rhs);
        return msg.str();
      }
    }
  }
  return {};
}

std::optional<std::string> FiniteComplex::identity_violation() const {
  for (int d = 1; d <= top_dim(); ++d) {
    for (const auto& cell : cells_[static_cast<std::size_t>(d)]) {
      for (const auto& f : cell.faces)
        if (f.dim() != d - 1 || !valid_ref(f)) return cell.name + ": dangling face reference";
      if (auto problem = identity_problem(d, cell.faces); !problem.empty())
        return cell.name + ": " + problem;
    }
  }
  return std::nullopt;
}

}  // namespace kinfty::simplicial
