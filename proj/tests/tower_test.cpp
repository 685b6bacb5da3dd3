#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "kinfty/error.hpp"
#include "kinfty/funcspace.hpp"
#include "kinfty/tower.hpp"

using kinfty::tower::Tower;
using kinfty::tower::TowerConfig;
using kinfty::tower::TowerElement;
using kinfty::tower::TowerFunctor;
namespace fs = kinfty::funcspace;
namespace ks = kinfty::simplicial;

namespace {

const Tower& default_tower() {
  static const Tower t;
  return t;
}

const Tower& example_tower() {
  static const Tower t([] {
    TowerConfig c;
    c.rep = "example41";
    return c;
  }());
  return t;
}

std::vector<int> sample(const std::vector<int>& xs, std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(xs[rng() % xs.size()]);
  return out;
}

// Base-level ≤ 1 elements: all of K₀ and all of K₁.
std::vector<TowerElement> low_elements(const Tower& t) {
  std::vector<TowerElement> out;
  for (int v : t.generators(0)) out.push_back({0, v});
  for (int x : *t.all_level1()) out.push_back(t.normalize({1, x}));
  return out;
}

}  // namespace

TEST(Config, ParsesKeysAndComments) {
  auto c = kinfty::tower::parse_config("# tower\nK0 = builtin:nplus(2)\nN = 4  # spare\nrep = example41\n");
  EXPECT_EQ(c.K0.size(), 10);
  EXPECT_EQ(c.N, 4);
  EXPECT_EQ(c.rep, "example41");
  auto d = kinfty::tower::parse_config("");
  EXPECT_EQ(d.K0.size(), 6);
  EXPECT_EQ(d.N, 3);
  EXPECT_EQ(d.rep, "identity");
}

TEST(Config, ErrorsCarryLineNumbers) {
  try {
    kinfty::tower::parse_config("N = 3\nN = zero\n");
    FAIL();
  } catch (const kinfty::InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(kinfty::tower::parse_config("rep = other\n"), kinfty::InputError);
  EXPECT_THROW(kinfty::tower::parse_config("K0 = builtin:nowhere\n"), kinfty::InputError);
  EXPECT_THROW(kinfty::tower::parse_config("colour = red\n"), kinfty::InputError);
  EXPECT_THROW(kinfty::tower::parse_config("N 3\n"), kinfty::InputError);
}

TEST(Config, RelativeComplexPath) {
  const auto dir = std::filesystem::temp_directory_path() / "kinfty_config_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "k.txt") << "dim_bound 2\n0 bot\n0 p\norder bot <= p\nbottom bot\n";
  std::ofstream(dir / "t.cfg") << "K0 = k.txt\nN = 2\n";
  auto c = kinfty::tower::load_config((dir / "t.cfg").string());
  EXPECT_EQ(c.K0.size(), 2);
  EXPECT_EQ(c.N, 2);
}

TEST(Config, RejectsUnsuitableK0) {
  TowerConfig c;
  c.K0 = kinfty::hpo::butterfly_domain();
  EXPECT_THROW(Tower{c}, kinfty::InputError);
  TowerConfig e;
  e.K0 = kinfty::hpo::chain_domain(3);
  e.rep = "example41";
  EXPECT_THROW(Tower{e}, kinfty::InputError);
}

TEST(Levels, LevelOneMatchesFunctionSpace) {
  const auto& t = default_tower();
  const auto& k0 = t.k0();
  const auto& all = *t.all_level1();
  // Monotone maps on the flat 6-element domain: 6^5 with f(bot) = bot, plus
  // 5 constants.
  EXPECT_EQ(all.size(), 7781u);
  for (int f : sample(all, 200, 1)) {
    auto sf = fs::make_functor(k0, k0, t.pairs(1, f));
    for (int x = 0; x < k0.size(); ++x) EXPECT_EQ(t.apply(1, f, x), fs::apply(sf, x));
  }
  auto xs = sample(all, 150, 2);
  auto ys = sample(all, 150, 3);
  for (int f : xs)
    for (int g : ys) {
      bool below = true;
      for (int x = 0; x < k0.size(); ++x) below = below && k0.leq(t.apply(1, f, x), t.apply(1, g, x));
      ASSERT_EQ(t.leq(1, f, g), below);
    }
}

TEST(Levels, JoinIsLeastUpperBound) {
  const auto& t = default_tower();
  const auto& all = *t.all_level1();
  const auto& k0 = t.k0();
  for (int f : sample(all, 60, 4))
    for (int g : sample(all, 60, 5)) {
      auto j = t.join(1, {f, g});
      bool bounded = true;
      for (int x = 0; x < k0.size(); ++x) bounded = bounded && k0.lub({t.apply(1, f, x), t.apply(1, g, x)});
      ASSERT_EQ(j.has_value(), bounded);
      if (!j) continue;
      EXPECT_TRUE(t.leq(1, f, *j));
      EXPECT_TRUE(t.leq(1, g, *j));
      for (int x = 0; x < k0.size(); ++x)
        EXPECT_EQ(t.apply(1, *j, x), *k0.lub({t.apply(1, f, x), t.apply(1, g, x)}));
    }
}

TEST(Levels, InconsistentStepsAreRejected) {
  const auto& t = default_tower();
  const int bot = t.bottom(0);
  const int p = t.vertex("S1.0").id;
  const int q = t.vertex("S1.1").id;
  EXPECT_THROW(t.make(1, {{bot, p}, {bot, q}}), kinfty::SemanticError);
  EXPECT_FALSE(t.try_make(1, {{bot, p}, {bot, q}}).has_value());
  EXPECT_TRUE(t.try_make(1, {{p, p}, {q, q}}).has_value());
  // At level 2 the guards (p ⇒ p) and (q ⇒ q) have a join, so their outputs
  // must be bounded.
  const int gp = t.make(1, {{p, p}});
  const int gq = t.make(1, {{q, q}});
  const int cp = t.make(1, {{bot, p}});
  const int cq = t.make(1, {{bot, q}});
  EXPECT_THROW(t.make(2, {{gp, cp}, {gq, cq}}), kinfty::SemanticError);
  EXPECT_THROW(t.make(1, {{99, p}}), kinfty::InputError);
}

TEST(Embedding, InitialPair) {
  const auto& t = default_tower();
  EXPECT_EQ(t.f_plus(0, t.bottom(0)), 0);
  EXPECT_EQ(t.f_minus(0, 0), t.bottom(0));
  const int one = t.vertex("S1.1").id;
  EXPECT_EQ(t.pairs(1, t.f_plus(0, one)), (kinfty::tower::Pairs{{t.bottom(0), one}}));
  const int c = t.make(1, {{t.bottom(0), one}});
  EXPECT_EQ(t.f_minus(0, c), one);
  for (int g : sample(*t.all_level1(), 300, 6)) EXPECT_TRUE(t.leq(1, t.f_plus(0, t.f_minus(0, g)), g));
}

TEST(Embedding, ExampleRepresentativeMap) {
  const auto& t = example_tower();
  const int zero = t.vertex("S1.0").id;
  const int one = t.vertex("S1.1").id;
  // Both 0 and 1 embed as λx.1.
  EXPECT_EQ(t.f_plus(0, zero), t.f_plus(0, one));
  for (int n = 1; n <= 3; ++n) {
    EXPECT_EQ(t.f_nm(0, n, zero), t.f_nm(0, n, one));
    EXPECT_EQ(t.f_nm(n, 0, t.f_nm(0, n, one)), one);
  }
  // The chosen representative is not ≃ to 0, so the retraction law fails at
  // level 0 for this preset.
  EXPECT_FALSE(t.check_projection_laws(0).passed());
}

TEST(Embedding, LiftedPairsMatchCompositionFormula) {
  const auto& t = default_tower();
  const auto& all1 = *t.all_level1();
  const auto basis2 = t.compact_basis(2).ids;
  // f₁⁺(h)(g) = f₀⁺(h(f₀⁻(g))) for g in K₁, and one level up.
  for (int h : sample(all1, 40, 7)) {
    const int lifted = t.f_plus(1, h);
    for (int g : sample(all1, 40, 8))
      ASSERT_EQ(t.apply(2, lifted, g), t.f_plus(0, t.apply(1, h, t.f_minus(0, g))));
  }
  for (int h : sample(basis2, 40, 21)) {
    const int lifted = t.f_plus(2, h);
    for (int g : sample(basis2, 40, 22))
      ASSERT_EQ(t.apply(3, lifted, g), t.f_plus(1, t.apply(2, h, t.f_minus(1, g))));
  }
  // f₁⁻(H)(x) = f₀⁻(H(f₀⁺(x))) for x in K₀.
  for (int h : sample(basis2, 300, 9))
    for (int x : t.generators(0)) ASSERT_EQ(t.apply(1, t.f_minus(1, h), x), t.f_minus(0, t.apply(2, h, t.f_plus(0, x))));
  // One level up: f₂⁻(H)(x) = f₁⁻(H(f₁⁺(x))) for x in K₁.
  const auto& g3 = t.generators(3);
  for (int h : sample(g3, 60, 10))
    for (int x : sample(all1, 60, 11))
      ASSERT_EQ(t.apply(2, t.f_minus(2, h), x), t.f_minus(1, t.apply(3, h, t.f_plus(1, x))));
}

TEST(Embedding, JoinsOfLiftedPairs) {
  const auto& t = default_tower();
  EXPECT_EQ(t.f_plus(1, 0), 0);
  EXPECT_EQ(t.f_plus(2, 0), 0);
  const auto basis2 = t.compact_basis(2).ids;
  for (int x : sample(basis2, 80, 12))
    for (int y : sample(basis2, 80, 13)) {
      auto j = t.join(2, {x, y});
      if (!j) continue;
      EXPECT_EQ(t.f_plus(2, *j), *t.join(3, {t.f_plus(2, x), t.f_plus(2, y)}));
      EXPECT_EQ(t.f_minus(1, *j), *t.join(1, {t.f_minus(1, x), t.f_minus(1, y)}));
    }
}

TEST(Embedding, CompositesCohere) {
  const auto& t = default_tower();
  for (int x : sample(t.compact_basis(2).ids, 300, 14)) {
    EXPECT_EQ(t.f_nm(2, 2, x), x);
    EXPECT_EQ(t.f_nm(1, 3, t.f_nm(2, 1, x)), t.f_nm(2, 3, t.f_nm(1, 2, t.f_nm(2, 1, x))));
    EXPECT_EQ(t.f_nm(3, 2, t.f_nm(2, 3, x)), x);
    EXPECT_EQ(t.f_nm(3, 0, t.f_nm(2, 3, x)), t.f_nm(2, 0, x));
  }
  for (int v : t.generators(0)) EXPECT_EQ(t.f_nm(3, 0, t.f_nm(0, 3, v)), v);
}

TEST(ProjectionLaws, HoldOnFullBases) {
  const auto& t = default_tower();
  for (int n = 0; n <= 1; ++n) {
    auto r = t.check_projection_laws(n);
    EXPECT_TRUE(r.passed()) << *r.failure;
    EXPECT_TRUE(r.retraction_complete);
    EXPECT_TRUE(r.deflation_complete);
    EXPECT_FALSE(r.deflation_by_reduction);
  }
  auto r2 = t.check_projection_laws(2);
  EXPECT_TRUE(r2.passed()) << *r2.failure;
  EXPECT_TRUE(r2.retraction_complete);
  EXPECT_TRUE(r2.deflation_complete);
  EXPECT_TRUE(r2.deflation_by_reduction);
  EXPECT_EQ(r2.deflation_checked, t.generators(3).size());
  EXPECT_THROW(t.check_projection_laws(3), kinfty::TruncationOverflow);
}

TEST(ProjectionLaws, CorruptedProjectionFails) {
  const auto& t = default_tower();
  const int fixed = t.vertex("S0.0").id;
  auto r = t.check_projection_laws(0, [&](int) { return fixed; });
  EXPECT_FALSE(r.passed());
  ASSERT_TRUE(r.failure.has_value());
  EXPECT_NE(r.failure->find("differs"), std::string::npos);
}

TEST(ProjectionLaws, LowerSetsAreMinimal) {
  const auto& t = default_tower();
  for (int a : sample(t.compact_basis(2).ids, 200, 15)) {
    for (int m : t.lower_set(1, a)) EXPECT_TRUE(t.leq(2, a, t.f_plus(1, m)));
    for (int x : sample(*t.all_level1(), 30, 16)) {
      if (!t.leq(2, a, t.f_plus(1, x))) continue;
      const auto& low = t.lower_set(1, a);
      EXPECT_TRUE(std::any_of(low.begin(), low.end(), [&](int m) { return t.leq(1, m, x); }));
    }
  }
}

TEST(Bases, GeneratorCounts) {
  const auto& t = default_tower();
  EXPECT_EQ(t.generators(0).size(), 6u);
  EXPECT_EQ(t.generators(1).size(), 31u);
  EXPECT_EQ(t.generators(2).size(), 931u);
  auto b2 = t.compact_basis(2);
  EXPECT_TRUE(b2.join_generating);
  EXPECT_EQ(b2.ids.size(), 1u + 7781u * 30u);
  EXPECT_FALSE(t.compact_basis(3).join_generating);
}

TEST(Normalize, Examples) {
  const auto& t = default_tower();
  for (int v : t.generators(0)) {
    EXPECT_EQ(t.normalize({1, t.f_plus(0, v)}), (TowerElement{0, v}));
    EXPECT_EQ(t.normalize({0, v}), (TowerElement{0, v}));
    EXPECT_EQ(t.normalize({3, t.f_nm(0, 3, v)}), (TowerElement{0, v}));
  }
  const auto& e = example_tower();
  const int one = e.vertex("S1.1").id;
  EXPECT_EQ(e.normalize({2, e.f_nm(0, 2, one)}), e.vertex("S1.1"));
}

TEST(Normalize, IdempotentAndMinimal) {
  const auto& t = default_tower();
  for (int x : sample(t.compact_basis(2).ids, 500, 17)) {
    auto n = t.normalize({2, x});
    EXPECT_EQ(t.normalize(n), n);
    EXPECT_TRUE(t.tower_equiv(n, {2, x}));
    for (int m = 0; m < n.level; ++m) EXPECT_NE(t.f_nm(m, 2, t.f_nm(2, m, x)), x);
  }
}

TEST(TowerOrder, Examples) {
  const auto& t = example_tower();
  const auto a = t.vertex("S1.0");
  const auto b = t.vertex("S1.1");
  EXPECT_TRUE(t.tower_leq(a, a));
  EXPECT_FALSE(t.tower_leq(a, b));
  EXPECT_FALSE(t.tower_leq(b, a));
  const auto& d = default_tower();
  for (const auto& x : low_elements(d)) EXPECT_TRUE(d.tower_leq(d.bottom_element(), x));
}

TEST(TowerOrder, AgreesAcrossLevels) {
  const auto& t = default_tower();
  auto xs = sample(t.compact_basis(2).ids, 60, 18);
  for (int x : xs)
    for (int y : xs) {
      const bool at2 = t.leq(2, x, y);
      EXPECT_EQ(t.leq(3, t.f_plus(2, x), t.f_plus(2, y)), at2);
      EXPECT_EQ(t.tower_leq(t.normalize({2, x}), t.normalize({2, y})), at2);
    }
}

TEST(Application, Examples) {
  const auto& t = example_tower();
  const auto a = t.vertex("S1.0");
  const auto b = t.vertex("S1.1");
  EXPECT_EQ(t.app(a, b), b);
  EXPECT_EQ(t.app(b, b), b);
  EXPECT_EQ(t.app_at(a, b, 0), t.app_at(a, b, 1));
  EXPECT_EQ(t.app_at(a, b, 1), t.app_at(a, b, 2));
  const auto& d = default_tower();
  for (const auto& y : low_elements(d)) EXPECT_EQ(d.app(d.bottom_element(), y), d.bottom_element());
}

TEST(Application, MonotoneAndStable) {
  const auto& t = default_tower();
  auto els = low_elements(t);
  std::mt19937 rng(19);
  for (int trial = 0; trial < 400; ++trial) {
    const auto x = els[rng() % els.size()];
    const auto x2 = els[rng() % els.size()];
    const auto y = els[rng() % els.size()];
    const auto y2 = els[rng() % els.size()];
    const auto r = t.app(x, y);
    EXPECT_TRUE(t.tower_equiv(r, t.app_at(x, y, t.adequate_level(x, y) + 1)));
    if (t.tower_leq(x, x2)) EXPECT_TRUE(t.tower_leq(r, t.app(x2, y)));
    if (t.tower_leq(y, y2)) EXPECT_TRUE(t.tower_leq(r, t.app(x, y2)));
  }
}

TEST(Application, TruncationOverflow) {
  TowerConfig c;
  c.N = 1;
  Tower t(c);
  const auto f = t.normalize({1, t.make(1, {{t.vertex("S1.0").id, t.vertex("S0.1").id}})});
  ASSERT_EQ(f.level, 1);
  EXPECT_EQ(t.app(f, t.vertex("S1.0")), t.vertex("S0.1"));
  try {
    t.app(f, f);
    FAIL();
  } catch (const kinfty::TruncationOverflow& e) {
    EXPECT_EQ(e.needed_level(), 2);
    EXPECT_EQ(e.max_level(), 1);
  }
}

TEST(Reflexivity, ExampleComputation) {
  const auto& t = example_tower();
  const auto a = t.vertex("S1.0");
  const auto b = t.vertex("S1.1");
  EXPECT_EQ(t.h_map(t.k_map(a)), b);
  EXPECT_EQ(t.h_map(TowerFunctor{}), t.bottom_element());
  for (const auto& s : t.render_components(b)) EXPECT_NE(s.find("S1.1"), std::string::npos);
}

TEST(Reflexivity, KIsApplication) {
  const auto& t = default_tower();
  auto els = low_elements(t);
  std::mt19937 rng(20);
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = els[rng() % els.size()];
    const auto y = els[rng() % els.size()];
    EXPECT_EQ(t.apply_functor(t.k_map(x), y), t.app(x, y));
  }
  EXPECT_TRUE(t.k_map(t.bottom_element()).steps.empty());
}

TEST(Reflexivity, HThenKAndKThenH) {
  const auto& t = default_tower();
  for (const auto& x : low_elements(t)) ASSERT_EQ(t.h_map(t.k_map(x)), x);
  std::vector<TowerElement> pool;
  for (int v : t.generators(0)) pool.push_back({0, v});
  for (int g : t.generators(1)) pool.push_back(t.normalize({1, g}));
  for (const auto& a : pool)
    for (const auto& b : pool) {
      TowerFunctor f{{{a, b}}};
      ASSERT_TRUE(t.functor_equiv(t.k_map(t.h_map(f)), f)) << t.render(f);
    }
}

TEST(FiniteApproximation, HoldsOnLowBases) {
  const auto& t = default_tower();
  EXPECT_TRUE(t.check_prop_4_4(t.bottom_element()));
  for (int n = 0; n <= 2; ++n)
    for (int x : t.generators(n)) ASSERT_TRUE(t.check_prop_4_4({n, x})) << n << " " << t.render(n, x);
  const auto& e = example_tower();
  EXPECT_TRUE(e.check_prop_4_4(e.vertex("S1.1")));
}

TEST(Edges, UnitAndCounitOfTheExample) {
  const auto& t = example_tower();
  const auto& c = t.k0().carrier();
  const auto a = t.vertex("S1.0");
  const auto b = t.vertex("S1.1");
  auto eta = t.unit_edge(a);
  EXPECT_EQ(eta.source, a);
  EXPECT_EQ(eta.target, b);
  EXPECT_EQ(ks::render_word(c, *eta.path), "S1.0: +S1.01");
  auto eps = t.counit_edge(a);
  EXPECT_EQ(eps.source, b);
  EXPECT_EQ(eps.target, a);
  EXPECT_EQ(ks::render_word(c, *eps.path), "S1.1: +S1.12 -S1.02");
  // Transported along k to the argument b, both become loops at b.
  auto beta = t.transport_k(eps, b);
  EXPECT_EQ(beta.source, b);
  EXPECT_EQ(beta.target, b);
  ks::AbelianizedPi1 pi(c);
  auto loop = ks::concat(c, *beta.path, *t.transport_k(eta, b).path);
  EXPECT_FALSE(ks::is_zero(pi.class_of(loop)));
}

TEST(Edges, TransportIsFunctorial) {
  const auto& t = example_tower();
  const auto& c = t.k0().carrier();
  auto e1 = t.embed_path(ks::parse_word(c, t.vertex("S1.0").id, "+S1.01"));
  auto e2 = t.embed_path(ks::parse_word(c, t.vertex("S1.1").id, "+S1.12"));
  for (const auto& y : {t.vertex("S1.1"), t.bottom_element(), t.vertex("S0.0")}) {
    auto whole = t.transport_k(t.compose(e1, e2), y);
    auto parts = t.compose(t.transport_k(e1, y), t.transport_k(e2, y));
    EXPECT_EQ(whole.path, parts.path);
    EXPECT_TRUE(t.tower_equiv(whole.source, parts.source));
    EXPECT_TRUE(t.tower_equiv(whole.target, parts.target));
  }
  auto id = t.identity_edge(t.vertex("S1.0"));
  EXPECT_TRUE(id.path->word.empty());
  EXPECT_EQ(t.reverse(t.reverse(e1)).path, e1.path);
  EXPECT_THROW(t.compose(e1, e1), kinfty::SemanticError);
}

TEST(Render, Components) {
  const auto& t = default_tower();
  const int p = t.vertex("S1.0").id;
  const int q = t.vertex("S0.1").id;
  const auto f = t.normalize({1, t.make(1, {{p, q}})});
  EXPECT_EQ(t.render(f), "(S1.0⇒S0.1)");
  auto comps = t.render_components(f);
  ASSERT_EQ(comps.size(), 4u);
  EXPECT_EQ(comps[0], "bot");
  EXPECT_EQ(comps[1], "(S1.0⇒S0.1)");
  EXPECT_EQ(comps[2], "[(S1.0⇒S0.1)]₂");
  EXPECT_EQ(t.render(t.bottom_element()), "bot");
}
