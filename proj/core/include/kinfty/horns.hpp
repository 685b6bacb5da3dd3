#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kinfty/simplicial.hpp"

namespace kinfty::simplicial {

inline constexpr std::size_t kDefaultInstanceCap = 1'000'000;

/// A map Λⁿᵢ -> X, given by its n faces (faces[i] stays empty).
struct HornInstance {
  int n = 1;
  int i = 0;
  std::vector<std::optional<SimplexRef>> faces;

  bool inner() const noexcept { return 0 < i && i < n; }
};

/// Throws InputError unless the faces are (n-1)-simplexes of X that agree on
/// shared sub-faces.
void validate_horn(const FiniteComplex& x, const HornInstance& h);

/// The horn obtained by forgetting face i of an n-simplex of X.
HornInstance horn_of(const FiniteComplex& x, const SimplexRef& simplex, int i);

/// An n-simplex of X (stored or degenerate) restricting to the horn, or
/// nullopt after exhausting every candidate in lexicographic order.
std::optional<SimplexRef> find_filler(const FiniteComplex& x, const HornInstance& h);

std::string describe(const FiniteComplex& x, const HornInstance& h);

enum class HornScope {
  all,    // every 0 <= i <= n: the Kan condition
  inner,  // 0 < i < n only: the inner-horn (quasi-category) condition
};

struct KanReport {
  /// Always "bounded-dimension check": passing is not a Kan certificate.
  std::string scope = "bounded-dimension check";
  int up_to = 0;
  HornScope horns = HornScope::all;
  bool passed = false;
  /// The instance cap was hit before the enumeration finished.
  bool aborted = false;
  std::size_t instances = 0;
  std::size_t failures = 0;
  /// Upper bound on the number of horn instances (product of face choices).
  double estimate = 0;
  std::optional<HornInstance> witness;
};

/// Tries to fill every horn instance of dimension 1..up_to. Inner horns of
/// each dimension are enumerated before outer ones, so the reported witness
/// is an inner horn whenever one fails.
KanReport kan_check(const FiniteComplex& x, int up_to,
                    std::size_t instance_cap = kDefaultInstanceCap,
                    HornScope horns = HornScope::all);

}  // namespace kinfty::simplicial
