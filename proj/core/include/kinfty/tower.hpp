#pragma once

// The truncated tower K₀, K₁ = [K₀→K₀], ..., K_N and the compact elements of
// its limit K∞.
//
// A level-0 element is a K₀ vertex, always stored as its ≃-class
// representative. A level-n element for n ≥ 1 is a normalized step functor
// over level n−1, hash-consed to an integer id; id 0 is the empty functor,
// the bottom of that level. Normal forms are canonical, so at levels n ≥ 1
// equal ids mean equal functors.
//
// All queries are memoized in caches owned by the Tower. A Tower is not
// safe to share between threads.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kinfty/homotopy.hpp"
#include "kinfty/hpo.hpp"
#include "kinfty/step_algebra.hpp"

namespace kinfty::tower {

using hpo::WeakDomain;
using simplicial::PathClass;
using steps::Pairs;

/// The choice x ↦ x′ in the initial embedding f₀⁺(x) = λy.x′, with the
/// carrier paths x → x′ (unit) and x′ → x (counit).
struct RepresentativeMap {
  std::string mode;
  std::vector<int> target;
  std::vector<PathClass> unit;
  std::vector<PathClass> counit;
};

RepresentativeMap identity_map(const WeakDomain& k0);
/// S1.0 ↦ S1.1 with unit [+S1.01] and counit [+S1.12 -S1.02]; identity
/// elsewhere. InputError when K₀ has no S¹.
RepresentativeMap example41_map(const WeakDomain& k0);
/// Checks that bottom is fixed and that every unit and counit path runs
/// between the right vertices.
void validate(const WeakDomain& k0, const RepresentativeMap& rep);

struct TowerConfig {
  WeakDomain K0 = hpo::build_N_plus(1);
  std::string k0_source = "builtin:nplus(1)";
  int N = 3;
  std::string rep = "identity";
};

/// `builtin:nplus(d)`, `builtin:chain(n)`, `builtin:butterfly`, or a path to
/// a complex file (resolved against base_dir when relative).
WeakDomain load_k0(const std::string& source, const std::string& base_dir = {});
/// Lines `K0 = ...`, `N = <int>`, `rep = identity | example41`; blank lines
/// and `#` comments are ignored. Unset keys keep their defaults.
TowerConfig parse_config(std::string_view text, const std::string& base_dir = {});
TowerConfig load_config(const std::string& path);

/// A compact element of K∞ given by one component: (f_{n,0}(x), ..., x,
/// f_{n,n+1}(x), ...) for x at level n.
struct TowerElement {
  int level = 0;
  int id = 0;

  friend bool operator==(const TowerElement&, const TowerElement&) = default;
  friend auto operator<=>(const TowerElement&, const TowerElement&) = default;
};

/// A compactly supported functor K∞ → K∞: the join of steps (A ⇒ B).
struct TowerFunctor {
  std::vector<std::pair<TowerElement, TowerElement>> steps;
};

/// An edge of K∞. `path` is the K₀ carrier path whose transport produces the
/// edge; for edges obtained through k it lives on the function argument, so
/// its ends need not be the level-0 components of source and target.
/// nullopt means the homotopy class was not tracked.
struct TowerEdge {
  TowerElement source;
  TowerElement target;
  std::optional<PathClass> path;
};

/// A set of level-n elements, and whether its joins exhaust the level.
struct Basis {
  std::vector<int> ids;
  bool join_generating = false;
};

struct ProjectionLawReport {
  int level = 0;
  std::size_t retraction_checked = 0;
  std::size_t deflation_checked = 0;
  bool retraction_complete = false;
  bool deflation_complete = false;
  /// Deflation at n = 2 was completed through its reduction to level ≤ 2
  /// checks rather than by enumerating K₃.
  bool deflation_by_reduction = false;
  std::optional<std::string> failure;
  bool passed() const noexcept { return !failure.has_value(); }
};

class Tower {
 public:
  explicit Tower(TowerConfig config = {});
  ~Tower();
  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  const TowerConfig& config() const noexcept { return config_; }
  const WeakDomain& k0() const noexcept { return config_.K0; }
  int max_level() const noexcept { return config_.N; }
  const RepresentativeMap& rep_map() const noexcept { return rep_; }

  // --- levels ---------------------------------------------------------------

  int bottom(int n) const;
  bool leq(int n, int x, int y) const;
  bool equiv(int n, int x, int y) const { return leq(n, x, y) && leq(n, y, x); }
  /// Least upper bound, or nullopt when the set is unbounded.
  std::optional<int> join(int n, const std::vector<int>& xs) const;
  /// f(x) for f at level n ≥ 1 and x at level n−1.
  int apply(int n, int f, int x) const;
  /// The level-n element ⋁(aᵢ ⇒ bᵢ); SemanticError naming the clash when the
  /// steps are inconsistent.
  int make(int n, const Pairs& pairs) const;
  std::optional<int> try_make(int n, const Pairs& pairs) const;
  /// make for steps (d ⇒ φ(d)) sampled from a monotone φ. Those are always
  /// consistent, so the check is skipped.
  int make_monotone(int n, const Pairs& pairs) const;
  /// Normal-form steps of a level-n element, n ≥ 1.
  const Pairs& pairs(int n, int id) const;
  /// Number of level-n elements materialized so far.
  std::size_t interned(int n) const;
  std::string render(int n, int id) const;

  // --- projection pairs -----------------------------------------------------

  /// fₙ⁺ : K_n → K_{n+1}.
  int f_plus(int n, int x) const;
  /// fₙ⁻ : K_{n+1} → K_n.
  int f_minus(int n, int g) const;
  /// Composite of embeddings (n < m) or projections (n > m).
  int f_nm(int n, int m, int x) const;
  /// Minimal x in K_n with a ≾ fₙ⁺(x), for a in K_{n+1}.
  const std::vector<int>& lower_set(int n, int a) const;

  /// G₀ = K₀ and G_{n+1} = {⊥} ∪ {(a ⇒ b) : a, b ∈ G_n, b ≠ ⊥}.
  const std::vector<int>& generators(int n) const;
  /// Every element of K₁, or nullopt when there are more than
  /// kLevel1Cap of them.
  const std::optional<std::vector<int>>& all_level1() const;
  static constexpr std::size_t kLevel1Cap = 100'000;
  /// The largest basis available: K₀, all of K₁ (or G₁), then
  /// {(a ⇒ g) : a ∈ K₁, g ∈ G₁} at level 2, and G_n above that.
  Basis compact_basis(int n) const;

  /// fₙ⁻∘fₙ⁺ = id on compact_basis(n) and fₙ⁺∘fₙ⁻ ≾ id on
  /// compact_basis(n+1). `minus` replaces fₙ⁻ inside the check.
  ///
  /// For n = 2, K₃ is out of reach. Since f₂⁺f₂⁻(a ⇒ b) is the join of
  /// (f₁⁺m ⇒ f₁⁺f₁⁻b) over m ∈ lower_set(1, a), deflation on every step
  /// follows from deflation at n = 1, deflation at n = 0 on all of K₁ and
  /// a ≾ f₀⁺(m) for every m ∈ lower_set(0, a), a ∈ K₁. Those are checked
  /// instead, on top of G₃ directly.
  ProjectionLawReport check_projection_laws(int n, const std::function<int(int)>& minus = {}) const;

  // --- tower elements -------------------------------------------------------

  TowerElement bottom_element() const { return {0, bottom(0)}; }
  /// Level-0 element for a K₀ vertex name.
  TowerElement vertex(std::string_view name) const;
  /// Lowest level whose round trip fixes the element.
  TowerElement normalize(TowerElement t) const;
  /// The level-m component of t.
  int component(TowerElement t, int m) const;
  bool tower_leq(TowerElement s, TowerElement t) const;
  bool tower_equiv(TowerElement s, TowerElement t) const { return tower_leq(s, t) && tower_leq(t, s); }
  std::optional<TowerElement> tower_join(const std::vector<TowerElement>& xs) const;
  std::string render(TowerElement t) const;
  /// Components at levels 0..max_level, rendered.
  std::vector<std::string> render_components(TowerElement t) const;

  /// The least k at which x•y can be read off: max(level(x)−1, level(y), 0).
  int adequate_level(TowerElement x, TowerElement y) const;
  /// x•y, computed at the adequate level and checked one level higher when
  /// the truncation allows; SemanticError when the two differ.
  TowerElement app(TowerElement x, TowerElement y) const;
  /// x_{k+1}(y_k) wrapped at level k and normalized.
  TowerElement app_at(TowerElement x, TowerElement y, int k) const;

  int support_level(const TowerFunctor& f) const;
  /// The element of level L+1 representing f, with L the support level;
  /// checked one level higher when the truncation allows (SemanticError
  /// when the two differ).
  TowerElement h_map(const TowerFunctor& f) const;
  TowerElement h_map_at(const TowerFunctor& f, int k) const;
  /// The steps of x one level down, as a functor y ↦ x•y.
  TowerFunctor k_map(TowerElement x) const;
  TowerElement apply_functor(const TowerFunctor& f, TowerElement y) const;
  /// Pointwise order; exact because functors are monotone, so comparing at
  /// the guards of f is enough.
  bool functor_leq(const TowerFunctor& f, const TowerFunctor& g) const;
  bool functor_equiv(const TowerFunctor& f, const TowerFunctor& g) const {
    return functor_leq(f, g) && functor_leq(g, f);
  }
  std::string render(const TowerFunctor& f) const;

  /// ⋁_{m ≤ N} f_{m,N}(x_m) = x_N.
  bool check_prop_4_4(TowerElement x) const;

  // --- edges ----------------------------------------------------------------

  /// f_{0,∞} applied to a K₀ path.
  TowerEdge embed_path(const PathClass& p) const;
  /// Degenerate edge at t, with the empty path at its level-0 component.
  TowerEdge identity_edge(TowerElement t) const;
  /// η: x → h(k(x)).
  TowerEdge unit_edge(TowerElement x) const;
  /// h(k(x)) → x, the edge whose k-image is the counit at k(x).
  TowerEdge counit_edge(TowerElement x) const;
  /// k(e)(y): e.source•y → e.target•y, carrying e's path.
  TowerEdge transport_k(const TowerEdge& e, TowerElement y) const;
  /// e then f; SemanticError when e.target ≄ f.source. The path is untracked
  /// unless both are tracked and compose in K₀.
  TowerEdge compose(const TowerEdge& e, const TowerEdge& f) const;
  TowerEdge reverse(const TowerEdge& e) const;

 private:
  struct Level;
  struct LevelOracle;

  Level& level(int n) const;
  void check_level(int n) const;
  int canon(int n, int x) const;
  std::optional<int> join2(int n, int x, int y) const;
  std::optional<int> fire(int n, const Pairs& f, int x) const;
  /// x ≾ ⋁ys at level n, assuming the join exists.
  bool leq_join(int n, int x, const std::vector<int>& ys) const;
  /// A point where the steps fire an unbounded set.
  std::optional<int> inconsistency(int n, const Pairs& pairs) const;
  int intern(int n, Pairs normal) const;
  void check_steps(int n, const Pairs& pairs) const;
  int make_trusted(int n, const Pairs& pairs) const;
  TowerElement lift(TowerElement t, int m) const;
  std::string render_rec(int n, int id, std::size_t budget) const;

  TowerConfig config_;
  RepresentativeMap rep_;
  mutable std::vector<std::unique_ptr<Level>> levels_;
  mutable std::vector<std::optional<std::vector<int>>> generators_;
  mutable std::optional<std::optional<std::vector<int>>> all_level1_;
};

}  // namespace kinfty::tower
