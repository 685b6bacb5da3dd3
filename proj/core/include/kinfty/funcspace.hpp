#pragma once

// The function space [K -> K'] over finite weakly ordered complexes, with
// finite joins of step functors as the canonical representation and explicit
// tables as the brute-force oracle.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kinfty/hpo.hpp"
#include "kinfty/step_algebra.hpp"

namespace kinfty::funcspace {

using hpo::VertexSet;
using hpo::WeakDomain;
using steps::Pairs;

/// Order oracle over a pair of finite domains, for the step algebra.
class DomainOracle {
 public:
  DomainOracle(const WeakDomain& dom, const WeakDomain& cod);
  bool dom_leq(int a, int x) const { return dom_->leq(a, x); }
  int dom_canon(int a) const { return dom_->rep(a); }
  bool cod_leq(int b, int c) const { return cod_->leq(b, c); }
  int cod_bottom() const { return *cod_->bottom(); }
  std::optional<int> cod_join(const std::vector<int>& bs) const;

 private:
  const WeakDomain* dom_;
  const WeakDomain* cod_;
};

/// ⋁(aᵢ ⇒ bᵢ) in normal form. The domains must outlive the functor.
struct StepFunctor {
  const WeakDomain* dom = nullptr;
  const WeakDomain* cod = nullptr;
  Pairs pairs;

  friend bool operator==(const StepFunctor& f, const StepFunctor& g) {
    return f.dom == g.dom && f.cod == g.cod && f.pairs == g.pairs;
  }
};

/// The constant-bottom functor.
StepFunctor empty_functor(const WeakDomain& k, const WeakDomain& l);
/// (a ⇒ b): b above a, bottom elsewhere.
StepFunctor step(int a, int b, const WeakDomain& k, const WeakDomain& l);
/// Normal form of an arbitrary pair set; SemanticError with the clashing
/// outputs when it is inconsistent.
StepFunctor make_functor(const WeakDomain& k, const WeakDomain& l, const Pairs& pairs);

/// A domain vertex x at which {bᵢ : aᵢ ≾ x} has no least upper bound.
std::optional<int> find_inconsistency(const WeakDomain& k, const WeakDomain& l, const Pairs& pairs);

int apply(const StepFunctor& f, int x);
StepFunctor join_steps(const StepFunctor& f, const StepFunctor& g);
bool pointwise_leq(const StepFunctor& f, const StepFunctor& g);
bool equivalent(const StepFunctor& f, const StepFunctor& g);
/// Join of a directed family; SemanticError when it is not directed.
StepFunctor sup_directed_functors(const std::vector<StepFunctor>& family);

std::string render(const StepFunctor& f);

// --- tables -----------------------------------------------------------------

struct FunctionTable {
  const WeakDomain* dom = nullptr;
  const WeakDomain* cod = nullptr;
  std::vector<int> map;

  int operator()(int x) const { return map[static_cast<std::size_t>(x)]; }
};

FunctionTable tabulate(const StepFunctor& f);
/// A pair x ≾ y with f(x) ⋠ f(y), if any.
std::optional<std::pair<int, int>> monotonicity_violation(const FunctionTable& t);
/// The image of the witness for x ≾ y: the canonical witness for
/// t(x) ≾ t(y). Step functors add no homotopy content of their own.
std::optional<std::vector<int>> edge_action(const FunctionTable& t, int x, int y);
bool tables_equivalent(const FunctionTable& s, const FunctionTable& t);
FunctionTable compose(const FunctionTable& outer, const FunctionTable& inner);

/// {(e, t(e)) : e compact} in normal form. InputError naming the violating
/// pair when t is not monotone.
StepFunctor to_steps(const FunctionTable& t);

struct ContinuityReport {
  bool continuous = true;
  /// A directed set whose image supremum differs from the image of its
  /// supremum.
  std::optional<VertexSet> witness;
};
/// Brute force over all directed subsets of the domain.
ContinuityReport continuity_oracle(const FunctionTable& t, int exhaustive_limit = 14);

/// Every monotone table K -> K', in lexicographic order of their maps.
std::vector<FunctionTable> enumerate_monotone_tables(const WeakDomain& k, const WeakDomain& l);
/// As above, or nullopt once more than `cap` tables exist.
std::optional<std::vector<FunctionTable>> enumerate_monotone_tables(const WeakDomain& k, const WeakDomain& l,
                                                                   std::size_t cap);

/// [K -> K'] as a finite weak domain whose vertices are the monotone tables,
/// ordered pointwise, with the constant-bottom table as bottom.
struct FunctionSpace {
  std::vector<FunctionTable> tables;
  WeakDomain domain;
};
FunctionSpace function_space_domain(const WeakDomain& k, const WeakDomain& l);

// --- currying ---------------------------------------------------------------

/// x ↦ (y ↦ f(x, y)) for a table over product_domain(k, l). Vertex (x, y) of
/// the product has index x * |l| + y. InputError with the witness pair when
/// some slice is not monotone.
std::vector<StepFunctor> curry(const FunctionTable& f, const WeakDomain& k, const WeakDomain& l);
FunctionTable uncurry(const std::vector<StepFunctor>& family, const WeakDomain& product);

}  // namespace kinfty::funcspace
