#pragma once

// Connected components and the abelianized edge-path group.

#include <cstdint>
#include <string>
#include <vector>

#include "kinfty/simplicial.hpp"

namespace kinfty::simplicial {

struct Components {
  /// component[v] for every vertex; ids ordered by smallest member.
  std::vector<int> component;
  std::vector<std::vector<int>> members;

  std::size_t size() const noexcept { return members.size(); }
};

Components pi0(const FiniteComplex& x);

/// A nondegenerate edge traversed forwards (d1 -> d0) or backwards.
struct SignedEdge {
  int edge = 0;
  bool inverse = false;

  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
  friend auto operator<=>(const SignedEdge&, const SignedEdge&) = default;
};

/// An edge path. Degenerate edges are identities and never appear in words.
struct PathClass {
  int basepoint = 0;
  std::vector<SignedEdge> word;

  friend bool operator==(const PathClass&, const PathClass&) = default;
};

int edge_source(const FiniteComplex& x, int edge);
int edge_target(const FiniteComplex& x, int edge);

/// Throws InputError naming the first step whose source is wrong.
void check_composable(const FiniteComplex& x, const PathClass& p);
int path_end(const FiniteComplex& x, const PathClass& p);
PathClass concat(const FiniteComplex& x, const PathClass& p, const PathClass& q);
PathClass reverse(const PathClass& p, int end);
/// Cancels adjacent e e⁻¹ pairs.
PathClass free_reduce(const PathClass& p);

/// Path of a single edge, or the constant path when the edge is degenerate.
PathClass edge_path(const FiniteComplex& x, const SimplexRef& edge);

/// Words parsed from "+name -name ..." using edge names of x.
PathClass parse_word(const FiniteComplex& x, int basepoint, const std::string& text);
std::string render_word(const FiniteComplex& x, const PathClass& p);

/// H₁ of the 2-skeleton, presented by the edges off a spanning forest
/// modulo 2-simplex boundaries. Coordinates are reduced to a canonical
/// representative so that equal classes give equal vectors.
class AbelianizedPi1 {
 public:
  explicit AbelianizedPi1(const FiniteComplex& x);

  /// Edges outside the spanning forest, in index order; one coordinate each.
  const std::vector<int>& cycle_edges() const noexcept { return cycle_edges_; }
  bool is_tree_edge(int edge) const { return coordinate_[static_cast<std::size_t>(edge)] < 0; }

  /// Raw coordinates of a word (sum of signed non-tree edges).
  std::vector<std::int64_t> raw(const PathClass& p) const;
  /// Canonical class of a loop; rejects words that are not closed loops.
  std::vector<std::int64_t> class_of(const PathClass& loop) const;
  std::vector<std::int64_t> reduce(std::vector<std::int64_t> v) const;

 private:
  const FiniteComplex* x_;
  std::vector<int> coordinate_;
  std::vector<int> cycle_edges_;
  /// Relation lattice in Hermite normal form: pivot column, row.
  std::vector<std::pair<std::size_t, std::vector<std::int64_t>>> basis_;
};

bool is_zero(const std::vector<std::int64_t>& v);

}  // namespace kinfty::simplicial
