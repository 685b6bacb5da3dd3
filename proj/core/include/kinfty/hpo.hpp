#pragma once

// Finite weakly ordered complexes: a carrier complex plus a preorder on its
// vertices, optionally with a bottom.
//
// The order is generated by explicit `order` pairs and closed under
// reflexivity and transitivity. Carrier edges carry homotopy content only
// and never induce order; this keeps loops in a sphere from collapsing the
// sphere into one order class.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kinfty/simplicial.hpp"
#include "kinfty/text_format.hpp"

namespace kinfty::hpo {

using simplicial::FiniteComplex;
using VertexSet = std::vector<int>;

class WeakDomain {
 public:
  WeakDomain(FiniteComplex carrier, const std::vector<std::pair<int, int>>& order,
             std::optional<int> bottom);
  static WeakDomain from_document(const simplicial::Document& doc);

  const FiniteComplex& carrier() const noexcept { return carrier_; }
  int size() const noexcept { return n_; }
  const std::string& name(int v) const { return carrier_.name(0, v); }
  /// Throws InputError for unknown names.
  int vertex(std::string_view name) const;
  std::vector<int> vertices() const;

  bool leq(int x, int y) const { return leq_[index(x, y)] != 0; }
  bool equiv(int x, int y) const { return leq(x, y) && leq(y, x); }
  /// The canonical witness for x ≾ y: a chain x = v0, v1, ..., vk = y of
  /// generating order pairs (shortest, then lexicographically least).
  /// Empty when x == y; nullopt when unrelated.
  std::optional<std::vector<int>> witness(int x, int y) const;

  /// Lexicographically least name in the ≃-class of x.
  int rep(int x) const { return rep_[static_cast<std::size_t>(x)]; }
  std::vector<VertexSet> classes() const;

  std::optional<int> bottom() const noexcept { return bottom_; }
  bool pointed() const noexcept { return bottom_.has_value(); }

  VertexSet upper_bounds(const VertexSet& xs) const;
  /// Least upper bound as a class representative, if one exists.
  std::optional<int> lub(const VertexSet& xs) const;
  bool is_directed(const VertexSet& xs) const;
  /// Least upper bound of a directed set; SemanticError naming the set when
  /// it is not directed or has no least upper bound.
  int sup(const VertexSet& xs) const;

  std::string render_set(const VertexSet& xs) const;
  const std::vector<std::pair<int, int>>& generators() const noexcept { return generators_; }

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(y);
  }

  FiniteComplex carrier_;
  int n_;
  std::vector<std::pair<int, int>> generators_;
  std::vector<std::vector<int>> successors_;
  std::vector<char> leq_;
  std::vector<int> rep_;
  std::optional<int> bottom_;
};

struct PreorderReport {
  bool reflexive = true;
  bool transitive = true;
  /// Every related pair has exactly one canonical witness, and each witness
  /// is a chain of generating pairs from x to y.
  bool hom_discipline = true;
  std::string failure;
  bool ok() const noexcept { return reflexive && transitive && hom_discipline; }
};

/// Exhaustive re-check of the order axioms.
PreorderReport check_preorder(const WeakDomain& k);

WeakDomain product_domain(const WeakDomain& k, const WeakDomain& l);

/// Brute force over directed subsets when the carrier has at most
/// `exhaustive_limit` vertices. Larger carriers use the fact that a finite
/// directed set contains an upper bound of itself.
bool is_compact(const WeakDomain& k, int x, int exhaustive_limit = 14);

struct AlgebraicReport {
  bool passed = false;
  bool precondition_failed = false;
  std::string message;
  VertexSet failures;
};
AlgebraicReport is_algebraic(const WeakDomain& k);

struct BoundedCompleteReport {
  bool passed = false;
  std::optional<VertexSet> failing_subset;
  std::size_t subsets_checked = 0;
  bool exhaustive = false;
};
/// Every subset with an upper bound has a least one. Exhaustive over
/// subsets up to `exhaustive_limit` vertices; beyond that checks the empty
/// set and all pairs, which implies the finite case by induction.
BoundedCompleteReport is_bounded_complete(const WeakDomain& k, int exhaustive_limit = 14);

// --- builders -------------------------------------------------------------

/// S⁰ ⊔ ... ⊔ S^d ⊔ {bot}, spheres modelled by ∂Δ^{k+1}, bot below everything.
/// Vertex names are "S<k>.<i>" and "bot".
WeakDomain build_N_plus(int max_sphere_dim, int dim_bound = simplicial::kDefaultDimBound);

/// 0 ≾ 1 ≾ ... ≾ n-1 with bottom 0; vertex names are the numbers.
WeakDomain chain_domain(int n);
/// bot below a, b; a, b below c, d; c and d incomparable.
WeakDomain butterfly_domain();
/// A single point, its own bottom.
WeakDomain point_domain();

/// Every finite poset with a least element on at most max_size vertices, up
/// to isomorphism. Vertex 0 is the bottom.
std::vector<WeakDomain> enumerate_pointed_posets(int max_size);

}  // namespace kinfty::hpo
