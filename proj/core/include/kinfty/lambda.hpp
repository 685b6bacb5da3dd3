#pragma once

// Untyped λ-terms, one-step β/η conversions, and their interpretation in
// the tower: terms denote compact elements of K∞ and conversions denote
// edges between them.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kinfty/tower.hpp"

namespace kinfty::lambda {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// A variable, an application `fn arg`, or an abstraction `λname.body`.
struct Term {
  enum class Kind { var, app, abs };
  Kind kind = Kind::var;
  std::string name;  // variable or binder
  TermPtr fn;        // app
  TermPtr arg;       // app
  TermPtr body;      // abs
};

TermPtr var(std::string name);
TermPtr app(TermPtr fn, TermPtr arg);
TermPtr abs(std::string binder, TermPtr body);

/// term := abs | app ; abs := ("\" | "λ") ident "." term ; app := atom {atom} ;
/// atom := ident | "(" term ")". InputError with the byte offset on failure.
TermPtr parse(std::string_view src);
/// Minimal parentheses; parse(render(t)) is α-equal to t.
std::string render(const TermPtr& t);

std::set<std::string> free_vars(const TermPtr& t);
/// Number of nodes.
std::size_t size(const TermPtr& t);
/// Binders renamed by depth to names no identifier can take.
TermPtr canonical(const TermPtr& t);
bool alpha_equal(const TermPtr& s, const TermPtr& t);
/// Capture-avoiding t[x := n].
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& n);

/// Path from the root: 0 enters the function of an application or the body
/// of an abstraction, 1 enters the argument.
using Position = std::vector<int>;
std::string render(const Position& p);
/// InputError when the path leaves the term.
TermPtr subterm(const TermPtr& t, const Position& p);
TermPtr replace_at(const TermPtr& t, const Position& p, TermPtr with);

struct ConversionStep {
  enum class Kind { beta, eta, refl };
  Kind kind = Kind::refl;
  Position position;
  TermPtr source;
  TermPtr target;
};

std::string to_string(ConversionStep::Kind k);
/// (λx.M)N → M[x := N] at p; InputError when there is no β-redex there.
ConversionStep beta_step(const TermPtr& t, const Position& p);
/// λz.Mz → M with z not free in M; InputError when there is no η-redex.
ConversionStep eta_step(const TermPtr& t, const Position& p);
ConversionStep refl_step(const TermPtr& t);
/// Every β- and η-step out of t, in pre-order of positions.
std::vector<ConversionStep> redexes(const TermPtr& t);

// --- semantics ----------------------------------------------------------------

using tower::Tower;
using tower::TowerEdge;
using tower::TowerElement;
using Environment = std::map<std::string, TowerElement>;

/// ⟦x⟧ρ = ρ(x), ⟦MN⟧ρ = ⟦M⟧ρ • ⟦N⟧ρ, ⟦λx.M⟧ρ = h(d ↦ ⟦M⟧ρ[x:=d]).
/// SemanticError for unbound variables; TruncationOverflow when an
/// abstraction does not stabilize below the truncation level.
TowerElement interpret(const Tower& t, const TermPtr& term, const Environment& env);

/// The edge of a conversion. β runs from the redex to the contractum along
/// the counit, η from the contractum to the redex along the unit. Steps
/// under a binder or in argument position, and β-redexes whose abstraction
/// is not an η-expansion, get an untracked path.
TowerEdge interpret_conversion(const Tower& t, const ConversionStep& s, const Environment& env);

enum class Verdict { equivalent, non_equivalent, unknown };
std::string to_string(Verdict v);

struct ConversionComparison {
  Verdict verdict = Verdict::unknown;
  /// e1 followed by e2 oriented back, freely reduced, when both are tracked
  /// and close up.
  std::optional<tower::PathClass> loop;
  /// Abelianized class of the loop.
  std::vector<std::int64_t> abelian_class;
  std::string reason;
};

/// Composes e1 with e2 oriented back to e1's source and reads the loop in
/// the abelianized fundamental group of the K₀ carrier. A nonzero class
/// proves non-equivalence; an empty reduced word proves equivalence.
/// InputError when the endpoints do not match in either orientation.
ConversionComparison equivalent_conversions(const Tower& t, const TowerEdge& e1, const TowerEdge& e2);

}  // namespace kinfty::lambda
