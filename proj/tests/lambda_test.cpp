#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "kinfty/error.hpp"
#include "kinfty/lambda.hpp"

namespace lam = kinfty::lambda;
namespace ks = kinfty::simplicial;
using kinfty::tower::Tower;
using kinfty::tower::TowerConfig;
using lam::TermPtr;

namespace {

const Tower& example_tower() {
  static const Tower t([] {
    TowerConfig c;
    c.rep = "example41";
    return c;
  }());
  return t;
}

const Tower& identity_tower() {
  static const Tower t;
  return t;
}

// Terms of exactly `n` nodes whose variables come from `scope`, binding
// names from `binders`.
std::vector<TermPtr> terms_of_size(int n, const std::vector<std::string>& scope,
                                   const std::vector<std::string>& binders) {
  std::vector<TermPtr> out;
  if (n == 1) {
    for (const auto& v : scope) out.push_back(lam::var(v));
    return out;
  }
  for (int k = 1; k + 1 < n; ++k)
    for (const auto& f : terms_of_size(k, scope, binders))
      for (const auto& a : terms_of_size(n - 1 - k, scope, binders)) out.push_back(lam::app(f, a));
  for (const auto& b : binders) {
    auto inner = scope;
    if (std::find(inner.begin(), inner.end(), b) == inner.end()) inner.push_back(b);
    for (const auto& body : terms_of_size(n - 1, inner, binders)) out.push_back(lam::abs(b, body));
  }
  return out;
}

std::vector<TermPtr> terms_up_to(int n, const std::vector<std::string>& scope, const std::vector<std::string>& binders) {
  std::vector<TermPtr> out;
  for (int k = 1; k <= n; ++k) {
    auto more = terms_of_size(k, scope, binders);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

// Nameless oracle: de Bruijn indices for bound variables, names for free ones.
struct DB {
  enum Kind { bound, free, app, abs } kind;
  int index = 0;
  std::string name;
  std::shared_ptr<DB> l, r;
};
using DBPtr = std::shared_ptr<DB>;

DBPtr to_db(const TermPtr& t, std::vector<std::string>& ctx) {
  auto d = std::make_shared<DB>();
  switch (t->kind) {
    case lam::Term::Kind::var: {
      for (std::size_t i = ctx.size(); i-- > 0;)
        if (ctx[i] == t->name) {
          d->kind = DB::bound;
          d->index = static_cast<int>(ctx.size() - 1 - i);
          return d;
        }
      d->kind = DB::free;
      d->name = t->name;
      return d;
    }
    case lam::Term::Kind::app:
      d->kind = DB::app;
      d->l = to_db(t->fn, ctx);
      d->r = to_db(t->arg, ctx);
      return d;
    case lam::Term::Kind::abs:
      d->kind = DB::abs;
      ctx.push_back(t->name);
      d->l = to_db(t->body, ctx);
      ctx.pop_back();
      return d;
  }
  return d;
}

DBPtr to_db(const TermPtr& t) {
  std::vector<std::string> ctx;
  return to_db(t, ctx);
}

bool db_equal(const DBPtr& a, const DBPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case DB::bound:
      return a->index == b->index;
    case DB::free:
      return a->name == b->name;
    case DB::app:
      return db_equal(a->l, b->l) && db_equal(a->r, b->r);
    case DB::abs:
      return db_equal(a->l, b->l);
  }
  return false;
}

// Bound indices ≥ cutoff shift by d; free names are untouched.
DBPtr shift(const DBPtr& t, int d, int cutoff = 0) {
  auto out = std::make_shared<DB>(*t);
  if (t->kind == DB::bound && t->index >= cutoff) out->index += d;
  if (t->kind == DB::app) {
    out->l = shift(t->l, d, cutoff);
    out->r = shift(t->r, d, cutoff);
  }
  if (t->kind == DB::abs) out->l = shift(t->l, d, cutoff + 1);
  return out;
}

DBPtr db_subst_free(const DBPtr& t, const std::string& x, const DBPtr& n, int depth = 0) {
  if (t->kind == DB::free) return t->name == x ? shift(n, depth) : t;
  if (t->kind == DB::bound) return t;
  auto out = std::make_shared<DB>(*t);
  if (t->kind == DB::app) {
    out->l = db_subst_free(t->l, x, n, depth);
    out->r = db_subst_free(t->r, x, n, depth);
  } else {
    out->l = db_subst_free(t->l, x, n, depth + 1);
  }
  return out;
}

lam::Environment example_env(const Tower& t) { return {{"x", t.vertex("S1.0")}, {"y", t.vertex("S1.1")}}; }

}  // namespace

TEST(Parse, Examples) {
  auto t = lam::parse("(\\z. x z) y");
  EXPECT_EQ(lam::render(t), "(λz.x z) y");
  EXPECT_EQ(lam::render(lam::parse("λx.λy.x y y")), "λx.λy.x y y");
  EXPECT_EQ(lam::render(lam::parse("f (g h) (λa.a)")), "f (g h) (λa.a)");
  EXPECT_EQ(lam::render(lam::parse("  a_1  b2 ")), "a_1 b2");
  EXPECT_EQ(lam::size(t), 6u);
  EXPECT_EQ(lam::free_vars(t), (std::set<std::string>{"x", "y"}));
}

TEST(Parse, ErrorsCarryOffsets) {
  for (const char* bad : {"", "(x", "x)", "\\.x", "λx x", "1x", "x . y", "f \\x.x"}) {
    try {
      lam::parse(bad);
      ADD_FAILURE() << bad;
    } catch (const kinfty::InputError& e) {
      EXPECT_NE(std::string(e.what()).find("offset"), std::string::npos) << e.what();
    }
  }
  try {
    lam::parse("(x y");
  } catch (const kinfty::InputError& e) {
    EXPECT_NE(std::string(e.what()).find("offset 4"), std::string::npos) << e.what();
  }
}

TEST(Parse, RenderRoundTrip) {
  for (const auto& t : terms_up_to(6, {"x", "y"}, {"x", "z"})) {
    auto back = lam::parse(lam::render(t));
    ASSERT_TRUE(db_equal(to_db(back), to_db(t))) << lam::render(t);
  }
}

TEST(Alpha, MatchesNamelessForm) {
  auto ts = terms_up_to(5, {"x"}, {"x", "y", "z"});
  std::mt19937 rng(1);
  for (int trial = 0; trial < 4000; ++trial) {
    const auto& a = ts[rng() % ts.size()];
    const auto& b = ts[rng() % ts.size()];
    ASSERT_EQ(lam::alpha_equal(a, b), db_equal(to_db(a), to_db(b))) << lam::render(a) << " | " << lam::render(b);
  }
  EXPECT_TRUE(lam::alpha_equal(lam::parse("λx.λy.x"), lam::parse("λa.λb.a")));
  EXPECT_FALSE(lam::alpha_equal(lam::parse("λx.λy.x"), lam::parse("λa.λb.b")));
  EXPECT_FALSE(lam::alpha_equal(lam::parse("λx.y"), lam::parse("λx.z")));
}

TEST(Substitution, AvoidsCapture) {
  auto r = lam::substitute(lam::parse("λy.x y"), "x", lam::parse("y"));
  EXPECT_TRUE(lam::alpha_equal(r, lam::parse("λw.y w")));
  EXPECT_EQ(lam::free_vars(r), (std::set<std::string>{"y"}));
  EXPECT_TRUE(lam::alpha_equal(lam::substitute(lam::parse("λx.x"), "x", lam::parse("y")), lam::parse("λx.x")));
}

TEST(Substitution, MatchesNamelessOracle) {
  const auto ms = terms_up_to(5, {"x", "y"}, {"y", "z"});
  const auto ns = terms_up_to(3, {"x", "y", "z"}, {"y"});
  std::mt19937 rng(2);
  for (int trial = 0; trial < 5000; ++trial) {
    const auto& m = ms[rng() % ms.size()];
    const auto& n = ns[rng() % ns.size()];
    auto got = lam::substitute(m, "x", n);
    auto want = db_subst_free(to_db(m), "x", to_db(n));
    ASSERT_TRUE(db_equal(to_db(got), want)) << lam::render(m) << " [x:=" << lam::render(n) << "]";
  }
}

TEST(Conversions, BetaAndEta) {
  auto t = lam::parse("(\\z. x z) y");
  auto b = lam::beta_step(t, {});
  EXPECT_EQ(lam::render(b.target), "x y");
  auto e = lam::eta_step(t, {0});
  EXPECT_EQ(lam::render(e.target), "x y");
  EXPECT_THROW(lam::beta_step(t, {0}), kinfty::InputError);
  EXPECT_THROW(lam::eta_step(t, {}), kinfty::InputError);
  EXPECT_THROW(lam::eta_step(lam::parse("λz.z z"), {}), kinfty::InputError);
  EXPECT_THROW(lam::beta_step(t, {1, 1}), kinfty::InputError);
  auto rs = lam::redexes(t);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs[0].kind, lam::ConversionStep::Kind::beta);
  EXPECT_EQ(rs[1].kind, lam::ConversionStep::Kind::eta);
  EXPECT_EQ(lam::render(rs[1].position), "0");
  auto inner = lam::beta_step(lam::parse("λw.(λv.v) w"), {0});
  EXPECT_EQ(lam::render(inner.target), "λw.w");
}

TEST(Interpret, ExampleTerm) {
  const auto& t = example_tower();
  const auto env = example_env(t);
  const auto b = t.vertex("S1.1");
  EXPECT_EQ(lam::interpret(t, lam::parse("(\\z. x z) y"), env), b);
  EXPECT_EQ(lam::interpret(t, lam::parse("x y"), env), b);
  EXPECT_EQ(lam::interpret(t, lam::parse("\\z. x z"), env), b);
  EXPECT_THROW(lam::interpret(t, lam::parse("x w"), env), kinfty::SemanticError);
}

TEST(Interpret, NonCompactTermsOverflow) {
  const auto& t = identity_tower();
  EXPECT_THROW(lam::interpret(t, lam::parse("λv.v"), {}), kinfty::TruncationOverflow);
}

TEST(Interpret, ConstantsAndSelfApplication) {
  const auto& t = identity_tower();
  const auto a = t.vertex("S1.0");
  // Level-0 elements act as constants, so λz.a ≃ a and a a = a.
  EXPECT_EQ(lam::interpret(t, lam::parse("λz.x"), {{"x", a}}), a);
  EXPECT_EQ(lam::interpret(t, lam::parse("x x"), {{"x", a}}), a);
  EXPECT_EQ(lam::interpret(t, lam::parse("(λz.z z) x"), {{"x", a}}), a);
}

TEST(Interpret, AlphaVariantsAgree) {
  const auto& t = identity_tower();
  const auto env = example_env(t);
  auto ts = terms_up_to(5, {"x", "y"}, {"z", "w"});
  std::size_t checked = 0;
  for (const auto& m : ts) {
    lam::Environment renamed_env = env;
    auto variant = lam::canonical(m);
    // canonical() names are not identifiers; rename them to fresh ones.
    std::function<TermPtr(const TermPtr&)> relabel = [&](const TermPtr& s) -> TermPtr {
      switch (s->kind) {
        case lam::Term::Kind::var:
          return s->name[0] == '%' ? lam::var("b" + s->name.substr(1)) : s;
        case lam::Term::Kind::app:
          return lam::app(relabel(s->fn), relabel(s->arg));
        case lam::Term::Kind::abs:
          return lam::abs("b" + s->name.substr(1), relabel(s->body));
      }
      return s;
    };
    variant = relabel(variant);
    ASSERT_TRUE(lam::alpha_equal(m, variant));
    try {
      auto v = lam::interpret(t, m, env);
      EXPECT_EQ(lam::interpret(t, variant, env), v) << lam::render(m);
      ++checked;
    } catch (const kinfty::TruncationOverflow&) {
      EXPECT_THROW(lam::interpret(t, variant, env), kinfty::TruncationOverflow);
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(Interpret, Compositional) {
  const auto& t = identity_tower();
  const auto env = example_env(t);
  std::size_t checked = 0;
  for (const auto& m : terms_up_to(6, {"x", "y"}, {"z"})) {
    if (m->kind != lam::Term::Kind::app) continue;
    try {
      auto whole = lam::interpret(t, m, env);
      auto parts = t.app(lam::interpret(t, m->fn, env), lam::interpret(t, m->arg, env));
      ASSERT_EQ(whole, parts) << lam::render(m);
      ++checked;
    } catch (const kinfty::TruncationOverflow&) {
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(Interpret, SubstitutionLemma) {
  // ⟦M[x:=N]⟧ρ ≃ ⟦M⟧ρ[x:=⟦N⟧ρ] for small M and N over a two-point pool.
  for (const Tower* tp : {&identity_tower(), &example_tower()}) {
    const auto& t = *tp;
    const std::vector<kinfty::tower::TowerElement> pool{t.vertex("S1.0"), t.vertex("S1.1")};
    const auto ms = terms_up_to(7, {"x", "y"}, {"z"});
    const auto ns = terms_up_to(3, {"y"}, {"z"});
    std::size_t checked = 0;
    std::size_t skipped = 0;
    for (const auto& py : pool) {
      const lam::Environment env{{"y", py}};
      for (const auto& n : ns) {
        kinfty::tower::TowerElement nv;
        try {
          nv = lam::interpret(t, n, env);
        } catch (const kinfty::SemanticError&) {
          continue;
        }
        auto extended = env;
        extended["x"] = nv;
        for (const auto& m : ms) {
          try {
            auto lhs = lam::interpret(t, lam::substitute(m, "x", n), env);
            auto rhs = lam::interpret(t, m, extended);
            ASSERT_TRUE(t.tower_equiv(lhs, rhs))
                << lam::render(m) << " [x:=" << lam::render(n) << "]: " << t.render(lhs) << " vs " << t.render(rhs);
            ++checked;
          } catch (const kinfty::SemanticError&) {
            // Truncation overflow, or an element the example preset leaves
            // incoherent above level 0.
            ++skipped;
          }
        }
      }
    }
    EXPECT_GT(checked, 1000u) << skipped << " skipped";
  }
}

TEST(Edges, ExampleConversionsDiffer) {
  const auto& t = example_tower();
  const auto& c = t.k0().carrier();
  const auto env = example_env(t);
  const auto b = t.vertex("S1.1");
  auto term = lam::parse("(\\z. x z) y");
  auto beta = lam::interpret_conversion(t, lam::beta_step(term, {}), env);
  auto eta = lam::interpret_conversion(t, lam::eta_step(term, {0}), env);
  EXPECT_EQ(beta.source, b);
  EXPECT_EQ(beta.target, b);
  EXPECT_EQ(eta.source, b);
  EXPECT_EQ(eta.target, b);
  ASSERT_TRUE(beta.path && eta.path);
  EXPECT_EQ(ks::render_word(c, *beta.path), "S1.1: +S1.12 -S1.02");
  EXPECT_EQ(ks::render_word(c, *eta.path), "S1.0: +S1.01");
  auto r = lam::equivalent_conversions(t, beta, eta);
  EXPECT_EQ(r.verdict, lam::Verdict::non_equivalent) << r.reason;
  EXPECT_FALSE(ks::is_zero(r.abelian_class));
  EXPECT_EQ(lam::equivalent_conversions(t, eta, beta).verdict, lam::Verdict::non_equivalent);
  EXPECT_EQ(lam::equivalent_conversions(t, beta, beta).verdict, lam::Verdict::equivalent);
  EXPECT_EQ(lam::equivalent_conversions(t, eta, eta).verdict, lam::Verdict::equivalent);
}

TEST(Edges, IdentityRepresentativesGiveEquivalentConversions) {
  const auto& t = identity_tower();
  const auto env = example_env(t);
  auto term = lam::parse("(\\z. x z) y");
  auto beta = lam::interpret_conversion(t, lam::beta_step(term, {}), env);
  auto eta = lam::interpret_conversion(t, lam::eta_step(term, {0}), env);
  EXPECT_EQ(lam::equivalent_conversions(t, beta, eta).verdict, lam::Verdict::equivalent);
}

TEST(Edges, EndpointsMatchInterpretations) {
  for (const Tower* tp : {&identity_tower(), &example_tower()}) {
    const auto& t = *tp;
    const auto env = example_env(t);
    std::size_t checked = 0;
    for (const auto& m : terms_up_to(6, {"x", "y"}, {"z"})) {
      for (const auto& s : lam::redexes(m)) {
        try {
          auto e = lam::interpret_conversion(t, s, env);
          auto src = lam::interpret(t, s.source, env);
          auto tgt = lam::interpret(t, s.target, env);
          if (s.kind == lam::ConversionStep::Kind::beta) {
            EXPECT_TRUE(t.tower_equiv(e.source, src) && t.tower_equiv(e.target, tgt));
          } else {
            EXPECT_TRUE(t.tower_equiv(e.source, tgt) && t.tower_equiv(e.target, src));
          }
          auto self = lam::equivalent_conversions(t, e, e);
          EXPECT_NE(self.verdict, lam::Verdict::non_equivalent);
          if (e.path) EXPECT_EQ(self.verdict, lam::Verdict::equivalent);
          ++checked;
        } catch (const kinfty::SemanticError&) {
        }
      }
    }
    EXPECT_GT(checked, 50u);
  }
}

TEST(Edges, ReflAndMismatch) {
  const auto& t = example_tower();
  const auto env = example_env(t);
  auto refl = lam::interpret_conversion(t, lam::refl_step(lam::parse("x y")), env);
  ASSERT_TRUE(refl.path);
  EXPECT_TRUE(refl.path->word.empty());
  auto other = lam::interpret_conversion(t, lam::refl_step(lam::parse("x")), env);
  EXPECT_THROW(lam::equivalent_conversions(t, refl, other), kinfty::InputError);
  auto beta = lam::interpret_conversion(t, lam::beta_step(lam::parse("(\\z. x z) y"), {}), env);
  auto r = lam::equivalent_conversions(t, beta, refl);
  EXPECT_EQ(r.verdict, lam::Verdict::unknown) << r.reason;
}
