#include <gtest/gtest.h>

#include <random>

#include "kinfty/error.hpp"
#include "kinfty/homotopy.hpp"
#include "kinfty/hpo.hpp"
#include "kinfty/text_format.hpp"

using kinfty::hpo::VertexSet;
using kinfty::hpo::WeakDomain;
namespace hpo = kinfty::hpo;
namespace ks = kinfty::simplicial;

namespace {

// Upper bounds and least elements straight from the definition, without
// touching WeakDomain::lub.
std::optional<int> brute_lub(const WeakDomain& k, const VertexSet& xs) {
  std::vector<int> ub;
  for (int u = 0; u < k.size(); ++u) {
    bool above = true;
    for (int x : xs) above = above && k.leq(x, u);
    if (above) ub.push_back(u);
  }
  for (int u : ub) {
    bool least = true;
    for (int v : ub) least = least && k.leq(u, v);
    if (least) return u;
  }
  return std::nullopt;
}

std::vector<VertexSet> all_subsets(int n) {
  std::vector<VertexSet> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    VertexSet xs;
    for (int v = 0; v < n; ++v)
      if (mask & (1 << v)) xs.push_back(v);
    out.push_back(xs);
  }
  return out;
}

}  // namespace

TEST(NPlus, VertexCountsAndComponents) {
  auto n1 = hpo::build_N_plus(1);
  EXPECT_EQ(n1.size(), 6);
  EXPECT_EQ(n1.name(*n1.bottom()), "bot");
  EXPECT_NO_THROW(n1.vertex("S1.0"));
  EXPECT_NO_THROW(n1.vertex("S0.1"));

  for (int d = 0; d <= 2; ++d) {
    auto k = hpo::build_N_plus(d);
    // S0 is two points, each higher sphere is connected, and bot is isolated.
    auto comps = ks::pi0(k.carrier());
    EXPECT_EQ(comps.size(), static_cast<std::size_t>(2 + d + 1)) << d;
  }
  EXPECT_EQ(hpo::build_N_plus(2).size(), 2 + 3 + 4 + 1);
  EXPECT_THROW(hpo::build_N_plus(3), kinfty::InputError);
}

TEST(NPlus, OrderIsFlat) {
  auto k = hpo::build_N_plus(2);
  const int bot = *k.bottom();
  for (int v = 0; v < k.size(); ++v) {
    EXPECT_TRUE(k.leq(bot, v));
    EXPECT_TRUE(k.leq(v, v));
    for (int w = 0; w < k.size(); ++w)
      if (v != w && v != bot) EXPECT_FALSE(k.leq(v, w)) << k.name(v) << " " << k.name(w);
  }
}

TEST(NPlus, SphereLoopSurvives) {
  auto k = hpo::build_N_plus(1);
  ks::AbelianizedPi1 pi(k.carrier());
  auto loop = ks::parse_word(k.carrier(), k.vertex("S1.0"), "+S1.01 +S1.12 -S1.02");
  EXPECT_FALSE(ks::is_zero(pi.class_of(loop)));
}

TEST(WeakDomain, PreorderAxiomsOnBuilders) {
  for (const auto& k : {hpo::build_N_plus(0), hpo::build_N_plus(1), hpo::build_N_plus(2),
                        hpo::chain_domain(4), hpo::butterfly_domain(), hpo::point_domain()}) {
    auto r = hpo::check_preorder(k);
    EXPECT_TRUE(r.ok()) << r.failure;
  }
}

TEST(WeakDomain, WitnessesAreChains) {
  auto c = hpo::chain_domain(4);
  EXPECT_EQ(*c.witness(0, 3), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(*c.witness(2, 2), std::vector<int>{});
  EXPECT_FALSE(c.witness(3, 0).has_value());
}

TEST(WeakDomain, EquivalenceClassesUseLeastName) {
  ks::FiniteComplex carrier;
  for (const char* n : {"z", "bot", "a", "m"}) carrier.add_vertex(n);
  WeakDomain k(carrier, {{1, 0}, {1, 2}, {1, 3}, {0, 3}, {3, 0}}, 1);
  EXPECT_TRUE(k.equiv(0, 3));
  EXPECT_EQ(k.rep(0), 3);
  EXPECT_EQ(k.rep(3), 3);
  EXPECT_EQ(k.classes().size(), 3u);
  EXPECT_EQ(*k.lub({2}), 2);
  EXPECT_EQ(*k.lub({0}), 3);
}

TEST(WeakDomain, RejectsFalseBottom) {
  ks::FiniteComplex carrier;
  carrier.add_vertex("x");
  carrier.add_vertex("y");
  EXPECT_THROW(WeakDomain(carrier, {}, 0), kinfty::InputError);
}

TEST(WeakDomain, FromDocument) {
  auto doc = ks::parse_document("0 bot\n0 a\n0 b\norder bot <= a\norder a <= b\nbottom bot\n");
  auto k = WeakDomain::from_document(doc);
  EXPECT_TRUE(k.leq(k.vertex("bot"), k.vertex("b")));
  EXPECT_THROW(k.vertex("q"), kinfty::InputError);
}

TEST(Directed, Examples) {
  auto k = hpo::build_N_plus(1);
  const int bot = *k.bottom();
  const int x = k.vertex("S1.0");
  const int y = k.vertex("S1.1");
  EXPECT_TRUE(k.is_directed({x}));
  EXPECT_TRUE(k.is_directed({bot, x}));
  EXPECT_FALSE(k.is_directed({x, y}));
  EXPECT_FALSE(k.is_directed({}));
}

TEST(Sup, Examples) {
  auto c = hpo::chain_domain(3);
  EXPECT_EQ(c.sup({1}), 1);
  EXPECT_EQ(c.sup({0, 1}), 1);
  EXPECT_EQ(c.sup({0, 1, 2}), 2);
  auto k = hpo::build_N_plus(1);
  EXPECT_THROW(k.sup({k.vertex("S1.0"), k.vertex("S1.1")}), kinfty::SemanticError);
}

TEST(Sup, MatchesBruteForceAndIsMonotone) {
  for (const auto& k : hpo::enumerate_pointed_posets(5)) {
    const auto subsets = all_subsets(k.size());
    for (const auto& xs : subsets) {
      auto l = k.lub(xs);
      auto b = brute_lub(k, xs);
      ASSERT_EQ(l.has_value(), b.has_value());
      if (l) EXPECT_TRUE(k.equiv(*l, *b));
    }
    for (const auto& xs : subsets) {
      if (!k.is_directed(xs) || !k.lub(xs)) continue;
      for (const auto& ys : subsets) {
        if (!std::includes(ys.begin(), ys.end(), xs.begin(), xs.end())) continue;
        if (!k.is_directed(ys) || !k.lub(ys)) continue;
        EXPECT_TRUE(k.leq(k.sup(xs), k.sup(ys)));
      }
    }
  }
}

TEST(Product, BottomAndComponentwiseOrder) {
  auto c = hpo::chain_domain(2);
  auto k = hpo::build_N_plus(0);
  auto p = hpo::product_domain(c, k);
  EXPECT_EQ(p.size(), c.size() * k.size());
  EXPECT_EQ(*p.bottom(), *c.bottom() * k.size() + *k.bottom());
  for (int x = 0; x < c.size(); ++x)
    for (int a = 0; a < k.size(); ++a)
      for (int y = 0; y < c.size(); ++y)
        for (int b = 0; b < k.size(); ++b)
          EXPECT_EQ(p.leq(x * k.size() + a, y * k.size() + b), c.leq(x, y) && k.leq(a, b));
  EXPECT_TRUE(hpo::check_preorder(p).ok());
}

TEST(Product, SupIsPairOfSups) {
  auto c = hpo::chain_domain(3);
  auto d = hpo::butterfly_domain();
  auto p = hpo::product_domain(c, d);
  const int m = d.size();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    VertexSet xs;
    for (int v = 0; v < p.size(); ++v)
      if (rng() % 4 == 0) xs.push_back(v);
    if (!p.is_directed(xs)) continue;
    VertexSet left, right;
    for (int v : xs) {
      left.push_back(v / m);
      right.push_back(v % m);
    }
    auto s = p.lub(xs);
    auto l = c.lub(left);
    auto r = d.lub(right);
    ASSERT_EQ(s.has_value(), l.has_value() && r.has_value());
    if (s) EXPECT_TRUE(p.equiv(*s, *l * m + *r));
  }
}

TEST(Product, WithPointIsIsomorphic) {
  auto k = hpo::build_N_plus(1);
  auto p = hpo::product_domain(k, hpo::point_domain());
  ASSERT_EQ(p.size(), k.size());
  for (int x = 0; x < k.size(); ++x)
    for (int y = 0; y < k.size(); ++y) EXPECT_EQ(p.leq(x, y), k.leq(x, y));
}

TEST(Compact, FiniteDomains) {
  auto c = hpo::chain_domain(3);
  for (int x = 0; x < 3; ++x) EXPECT_TRUE(hpo::is_compact(c, x));
  auto k = hpo::build_N_plus(1);
  for (int x = 0; x < k.size(); ++x) EXPECT_TRUE(hpo::is_compact(k, x));
}

TEST(Algebraic, FinitePointedDomainsPass) {
  for (int d = 0; d <= 2; ++d) EXPECT_TRUE(hpo::is_algebraic(hpo::build_N_plus(d)).passed);
  for (const auto& k : hpo::enumerate_pointed_posets(5)) EXPECT_TRUE(hpo::is_algebraic(k).passed);
}

TEST(Algebraic, MissingBottomIsPreconditionFailure) {
  ks::FiniteComplex carrier;
  carrier.add_vertex("x");
  carrier.add_vertex("y");
  WeakDomain k(carrier, {}, std::nullopt);
  auto r = hpo::is_algebraic(k);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.precondition_failed);
}

TEST(BoundedComplete, Verdicts) {
  EXPECT_TRUE(hpo::is_bounded_complete(hpo::chain_domain(3)).passed);
  for (int d = 0; d <= 2; ++d) EXPECT_TRUE(hpo::is_bounded_complete(hpo::build_N_plus(d)).passed);
  auto b = hpo::is_bounded_complete(hpo::butterfly_domain());
  EXPECT_FALSE(b.passed);
  ASSERT_TRUE(b.failing_subset.has_value());
  auto k = hpo::butterfly_domain();
  // The failing set is bounded but has two minimal upper bounds.
  EXPECT_FALSE(k.upper_bounds(*b.failing_subset).empty());
  EXPECT_FALSE(brute_lub(k, *b.failing_subset).has_value());
}

TEST(BoundedComplete, PairwiseModeAgreesWithExhaustive) {
  for (const auto& k : hpo::enumerate_pointed_posets(6)) {
    EXPECT_EQ(hpo::is_bounded_complete(k, 14).passed, hpo::is_bounded_complete(k, 0).passed);
  }
}

TEST(PosetEnumeration, CountsUpToIsomorphism) {
  // Unlabelled posets on 0..5 points: 1, 1, 2, 5, 16, 63.
  const std::size_t expected[] = {1, 2, 4, 9, 25, 88};
  for (int n = 1; n <= 6; ++n)
    EXPECT_EQ(hpo::enumerate_pointed_posets(n).size(), expected[n - 1]) << n;
}
