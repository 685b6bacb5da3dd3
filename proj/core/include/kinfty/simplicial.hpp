#pragma once

// Finitely presented simplicial sets.
//
// A FiniteComplex stores only nondegenerate simplexes, up to a dimension
// bound. Every simplex (degenerate or not) is addressed by a SimplexRef: a
// stored nondegenerate base simplex pulled back along an order-preserving
// surjection [m] -> [k]. By the Eilenberg-Zilber lemma that pair is unique,
// so SimplexRef equality is simplex equality.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kinfty::simplicial {

inline constexpr int kDefaultDimBound = 3;

struct SimplexRef {
  int base_dim = 0;
  int base = 0;
  /// surj[t] is the base vertex hit by vertex t; nondecreasing and onto.
  std::vector<int> surj{0};

  int dim() const noexcept { return static_cast<int>(surj.size()) - 1; }
  bool is_degenerate() const noexcept { return dim() != base_dim; }

  friend bool operator==(const SimplexRef&, const SimplexRef&) = default;
  friend auto operator<=>(const SimplexRef&, const SimplexRef&) = default;
};

/// The nondegenerate simplex `index` of dimension `dim`.
SimplexRef nondegenerate(int dim, int index);

class FiniteComplex {
 public:
  explicit FiniteComplex(int dim_bound = kDefaultDimBound);

  int dim_bound() const noexcept { return dim_bound_; }
  /// Highest dimension holding a stored simplex, -1 when empty.
  int top_dim() const noexcept;
  bool empty() const noexcept { return count(0) == 0; }
  std::size_t count(int dim) const noexcept;
  /// Counts of nondegenerate simplexes in dimensions 0..top_dim().
  std::vector<std::size_t> f_vector() const;

  int add_vertex(std::string name);
  /// Adds a simplex of dimension faces.size()-1 >= 1. Faces must be
  /// (dim-1)-simplexes already present and satisfy d_i d_j = d_{j-1} d_i.
  int add_simplex(std::string name, std::vector<SimplexRef> faces);

  const std::string& name(int dim, int index) const;
  std::optional<int> find(int dim, std::string_view name) const;
  std::span<const SimplexRef> faces(int dim, int index) const;

  /// d_i applied to any simplex, degenerate or not.
  SimplexRef face(const SimplexRef& s, int i) const;
  /// s_j applied to any simplex.
  SimplexRef degeneracy(const SimplexRef& s, int j) const;
  /// Index of vertex t of s.
  int vertex(const SimplexRef& s, int t) const;
  std::vector<int> vertices(const SimplexRef& s) const;

  /// Every m-simplex: nondegenerate ones first, then degeneracies of lower
  /// simplexes by decreasing base dimension; lexicographic within a group.
  std::vector<SimplexRef> simplexes(int m) const;

  /// Canonical text: a name, or s_j nests such as "s1(s0(v))".
  std::string describe(const SimplexRef& s) const;

  bool valid_ref(const SimplexRef& s) const noexcept;
  /// Re-checks every stored simplex; describes the first violated identity.
  std::optional<std::string> identity_violation() const;

 private:
  struct Cell {
    std::string name;
    std::vector<SimplexRef> faces;
  };
  std::string identity_problem(int dim, const std::vector<SimplexRef>& faces) const;

  int dim_bound_;
  std::vector<std::vector<Cell>> cells_;
  std::vector<std::unordered_map<std::string, int>> by_name_;
};

/// Order-preserving surjections [m] -> [k] in lexicographic order.
std::vector<std::vector<int>> surjections(int m, int k);

// --- constructions -------------------------------------------------------

/// The subcomplex of the simplex on `vertex_count` ordered vertices generated
/// by the given vertex sets (each sorted ascending).
FiniteComplex complex_from_vertex_sets(int vertex_count,
                                       const std::vector<std::vector<int>>& generators,
                                       int dim_bound = kDefaultDimBound);

FiniteComplex standard_simplex(int n, int dim_bound = kDefaultDimBound);
/// ∂Δⁿ; n >= 1. ∂Δ^{k+1} is the finite model of the sphere S^k.
FiniteComplex boundary_complex(int n, int dim_bound = kDefaultDimBound);
/// Λⁿᵢ: Δⁿ without its top cell and the face opposite vertex i.
FiniteComplex horn_complex(int n, int i, int dim_bound = kDefaultDimBound);

/// Copies `from` into `into`, prefixing names. Returns the per-dimension
/// index offset of the copy.
std::vector<int> append_disjoint(FiniteComplex& into, const FiniteComplex& from,
                                 std::string_view prefix);

struct ProductComplex {
  FiniteComplex complex;
  /// Set when dim X + dim Y exceeded the budget and higher cells were dropped.
  bool truncated = false;
  /// left[d][i] / right[d][i]: projections of product simplex (d, i).
  std::vector<std::vector<SimplexRef>> left;
  std::vector<std::vector<SimplexRef>> right;
};

/// X × Y. Vertex (i, j) gets index i * |Y₀| + j.
ProductComplex product(const FiniteComplex& x, const FiniteComplex& y);

/// X ⋆ Y; requires dim X + dim Y + 1 <= dim_bound. Names from Y get a
/// trailing prime so that the two sides never clash.
FiniteComplex join(const FiniteComplex& x, const FiniteComplex& y,
                   int dim_bound = kDefaultDimBound);

/// Per-dimension index maps X -> Y when the complexes are isomorphic.
/// Brute force over vertex bijections; intended for small complexes.
std::optional<std::vector<std::vector<int>>> find_isomorphism(const FiniteComplex& x,
                                                              const FiniteComplex& y);

}  // namespace kinfty::simplicial
