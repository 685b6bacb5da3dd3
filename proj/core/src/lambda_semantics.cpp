#include <algorithm>

#include "kinfty/error.hpp"
#include "kinfty/lambda.hpp"

namespace kinfty::lambda {

namespace {

namespace sx = simplicial;
using tower::Pairs;

class Interpreter {
 public:
  explicit Interpreter(const Tower& t) : t_(t) {}

  TowerElement eval(const TermPtr& term, const Environment& env) const {
    switch (term->kind) {
      case Term::Kind::var: {
        auto it = env.find(term->name);
        if (it == env.end()) throw SemanticError("unbound variable '" + term->name + "'");
        return t_.normalize(it->second);
      }
      case Term::Kind::app:
        return t_.app(eval(term->fn, env), eval(term->arg, env));
      case Term::Kind::abs:
        return abstraction(term, env);
    }
    return t_.bottom_element();
  }

 private:
  TowerElement abstraction(const TermPtr& term, const Environment& env) const {
    const auto& x = term->name;
    const auto& body = term->body;
    // A constant body and an η-expansion λx.Px have exact functors; anything
    // else is tabulated over probes.
    std::optional<tower::TowerFunctor> exact;
    if (!free_vars(body).count(x))
      exact = tower::TowerFunctor{{{t_.bottom_element(), eval(body, env)}}};
    else if (body->kind == Term::Kind::app && body->arg->kind == Term::Kind::var && body->arg->name == x &&
             !free_vars(body->fn).count(x))
      exact = t_.k_map(eval(body->fn, env));

    std::vector<TowerElement> context;
    int level = 0;
    if (exact) {
      level = t_.support_level(*exact);
    } else {
      for (const auto& v : free_vars(term)) {
        auto it = env.find(v);
        if (it == env.end()) throw SemanticError("unbound variable '" + v + "'");
        context.push_back(t_.normalize(it->second));
        level = std::max(level, context.back().level);
      }
    }
    auto at = [&](int L) { return exact ? t_.h_map_at(*exact, L) : tabulate(term, env, context, L); };
    // Escalate until two consecutive levels agree.
    const int top = t_.max_level();
    if (level + 2 > top) throw TruncationOverflow(level + 2, top);
    auto r = at(level);
    for (;; ++level) {
      if (level + 2 > top) throw TruncationOverflow(level + 2, top);
      auto next = at(level + 1);
      if (t_.tower_equiv(r, next)) return r;
      r = next;
    }
  }

  // ⋁(d ⇒ φ(d)) at level L+1 over probes d at level L: all of K₀ at L = 0,
  // the generators and the free variables' components above.
  TowerElement tabulate(const TermPtr& term, const Environment& env, const std::vector<TowerElement>& context,
                        int L) const {
    std::vector<int> probes = t_.generators(L);
    if (L > 0)
      for (const auto& c : context) probes.push_back(t_.component(c, L));
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    Environment inner = env;
    Pairs steps;
    for (int d : probes) {
      inner[term->name] = t_.normalize({L, d});
      const auto v = eval(term->body, inner);
      const int vl = t_.component(v, L);
      if (vl != t_.bottom(L)) steps.emplace_back(d, vl);
    }
    return t_.normalize({L + 1, t_.make_monotone(L + 1, steps)});
  }

  const Tower& t_;
};

// The arguments applied around the subterm at p, innermost first, when p
// only passes through function positions of applications.
std::optional<std::vector<TermPtr>> spine_arguments(const TermPtr& t, const Position& p) {
  std::vector<TermPtr> args;
  TermPtr cur = t;
  for (int step : p) {
    if (step != 0 || cur->kind != Term::Kind::app) return std::nullopt;
    args.push_back(cur->arg);
    cur = cur->fn;
  }
  std::reverse(args.begin(), args.end());
  return args;
}

bool is_eta_expansion(const TermPtr& t) {
  return t->kind == Term::Kind::abs && t->body->kind == Term::Kind::app &&
         t->body->arg->kind == Term::Kind::var && t->body->arg->name == t->name &&
         !free_vars(t->body->fn).count(t->name);
}

}  // namespace

TowerElement interpret(const Tower& t, const TermPtr& term, const Environment& env) {
  return Interpreter(t).eval(term, env);
}

TowerEdge interpret_conversion(const Tower& t, const ConversionStep& s, const Environment& env) {
  const auto src = interpret(t, s.source, env);
  const auto tgt = interpret(t, s.target, env);
  if (s.kind == ConversionStep::Kind::refl) return t.identity_edge(src);
  const bool beta = s.kind == ConversionStep::Kind::beta;
  const TowerEdge untracked = beta ? TowerEdge{src, tgt, std::nullopt} : TowerEdge{tgt, src, std::nullopt};

  const auto args = spine_arguments(s.source, s.position);
  if (!args) return untracked;
  const auto redex = subterm(s.source, s.position);
  if (beta && (redex->kind != Term::Kind::app || !is_eta_expansion(redex->fn))) return untracked;
  if (!beta && !is_eta_expansion(redex)) throw InputError("no eta-redex at " + render(s.position));
  TowerEdge e;
  try {
    if (beta)  // (λv.Pv)N → PN is the counit at ⟦P⟧ applied to ⟦N⟧.
      e = t.transport_k(t.counit_edge(interpret(t, redex->fn->body->fn, env)), interpret(t, redex->arg, env));
    else
      e = t.unit_edge(interpret(t, redex->body->fn, env));
    for (const auto& a : *args) e = t.transport_k(e, interpret(t, a, env));
  } catch (const SemanticError&) {
    // The endpoints exist but the unit or counit does not fit below N.
    return untracked;
  }
  if (!t.tower_equiv(e.source, untracked.source) || !t.tower_equiv(e.target, untracked.target))
    return untracked;
  return {untracked.source, untracked.target, e.path};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equivalent:
      return "EQUIVALENT";
    case Verdict::non_equivalent:
      return "NON-EQUIVALENT";
    case Verdict::unknown:
      return "UNKNOWN";
  }
  return {};
}

ConversionComparison equivalent_conversions(const Tower& t, const TowerEdge& e1, const TowerEdge& e2) {
  const bool same = t.tower_equiv(e1.source, e2.source) && t.tower_equiv(e1.target, e2.target);
  const bool opposite = t.tower_equiv(e1.source, e2.target) && t.tower_equiv(e1.target, e2.source);
  if (!same && !opposite)
    throw InputError("conversions do not share endpoints: " + t.render(e1.source) + " → " + t.render(e1.target) +
                     " vs " + t.render(e2.source) + " → " + t.render(e2.target));
  ConversionComparison r;
  if (!e1.path || !e2.path) {
    r.reason = "a conversion has no tracked homotopy class";
    return r;
  }
  const auto& c = t.k0().carrier();
  const auto& p1 = *e1.path;
  const auto& p2 = *e2.path;
  const int end1 = sx::path_end(c, p1);
  const int end2 = sx::path_end(c, p2);
  // Close the loop in the orientation the tower endpoints suggest first.
  const bool parallel = p1.basepoint == p2.basepoint && end1 == end2;
  const bool antiparallel = end1 == p2.basepoint && end2 == p1.basepoint;
  std::optional<sx::PathClass> loop;
  if (parallel && (same || !antiparallel))
    loop = sx::concat(c, p1, sx::reverse(p2, end2));
  else if (antiparallel)
    loop = sx::concat(c, p1, p2);
  if (!loop) {
    r.reason = "the carrier paths do not close up";
    return r;
  }
  r.loop = sx::free_reduce(*loop);
  sx::AbelianizedPi1 pi(c);
  r.abelian_class = pi.class_of(*r.loop);
  if (!sx::is_zero(r.abelian_class)) {
    r.verdict = Verdict::non_equivalent;
    r.reason = "the loop has a nonzero class in the abelianized fundamental group";
  } else if (r.loop->word.empty()) {
    r.verdict = Verdict::equivalent;
    r.reason = "the loop reduces to the constant path";
  } else {
    r.reason = "the loop is null-homologous but not freely trivial";
  }
  return r;
}

}  // namespace kinfty::lambda
