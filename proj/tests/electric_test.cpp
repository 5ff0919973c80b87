#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "fixtures.hpp"
#include "relhyp/electric.hpp"

using namespace relhyp;

namespace {

struct Z2RelB {
  RelativePresentation rp = fixtures::z2_rel_b();
  GroupBall ball{rp.base(), 6};
  ElectricBall eb{ball, rp};
  Word w(char const* s) const { return rp.alphabet().parse(s); }
  std::string str(Word const& x) const { return rp.alphabet().format(x); }
};

struct F2RelB {
  RelativePresentation rp = fixtures::f2_rel_b();
  GroupBall ball{rp.base(), 6};
  ElectricBall eb{ball, rp};
  Word w(char const* s) const { return rp.alphabet().parse(s); }
};

int x_coord(Word const& w) {
  int x = 0;
  for (Letter l : w) x += l == 0 ? 1 : l == 1 ? -1 : 0;
  return x;
}

Word random_word(std::mt19937_64& rng, std::size_t max_len) {
  Word w(rng() % (max_len + 1));
  for (auto& x : w) x = rng() % 4;
  return w;
}

}  // namespace

TEST(Electric, RelativePresentationValidation) {
  auto P = fixtures::z2();
  auto f = RelativePresentation::family(P, "P", {"b"});
  EXPECT_EQ(f.generators.size(), 2u);
  EXPECT_TRUE(f.relators.empty());
  ParabolicFamily half{"H", {2}, {}};  // b without B
  EXPECT_THROW(RelativePresentation(P, {half}), domain_error);
  EXPECT_THROW(RelativePresentation::family(P, "P", {"c"}), unknown_symbol);
  ParabolicFamily bad{"P", {2, 3}, {0}};  // abAB is not over {b, B}
  EXPECT_THROW(RelativePresentation(P, {bad}), domain_error);
}

TEST(Electric, ElectricLength) {
  Z2RelB g;
  EXPECT_EQ(electric_length(g.rp, g.w("abbba")), 2u);
  EXPECT_EQ(electric_length(g.rp, g.w("bbb")), 0u);
  EXPECT_EQ(electric_length(g.rp, Word{}), 0u);
}

TEST(Electric, PenetrationsExamples) {
  Z2RelB g;
  auto p = penetrations(g.eb, g.w("babA"));
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[0].coset, 0u);
  EXPECT_EQ(p[0].t0, 0u);
  EXPECT_EQ(p[0].t1, 1u);
  EXPECT_NE(p[1].coset, 0u);
  EXPECT_EQ(p[1].t0, 2u);
  EXPECT_EQ(p[1].t1, 3u);
  EXPECT_EQ(p[2].coset, 0u);
  EXPECT_EQ(p[2].t0, 4u);

  F2RelB f;
  auto q = penetrations(f.eb, f.w("ab"));
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(q[0].coset, 0u);
  EXPECT_EQ(q[0].t1, 0u);
  EXPECT_EQ(q[1].t0, 1u);
  EXPECT_EQ(q[1].t1, 2u);

  auto e = penetrations(g.eb, Word{});
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0], (Penetration{0, 0, 0, 0}));

  EXPECT_THROW(penetrations(g.eb, g.w("aaaaaaa")), out_of_ball);
}

TEST(Electric, BacktracksExamples) {
  Z2RelB g;
  F2RelB f;
  EXPECT_TRUE(backtracks(g.eb, g.w("babA")));
  EXPECT_FALSE(backtracks(f.eb, f.w("ab")));
  EXPECT_FALSE(backtracks(g.eb, g.w("bb")));
}

TEST(Electric, CosetReduceExamples) {
  Z2RelB g;
  EXPECT_EQ(g.str(coset_reduce(g.eb, g.w("abbBa"))), "aba");
  EXPECT_EQ(g.str(coset_reduce(g.eb, g.w("aBBa"))), "aBBa");
  EXPECT_EQ(g.str(coset_reduce(g.eb, g.w("abBa"))), "aa");
}

TEST(Electric, CosetReducePreservesEvaluationAndElectricLength) {
  for (auto rp : {fixtures::z2_rel_b(), fixtures::f2_rel_b()}) {
    GroupBall B(rp.base(), 6);
    ElectricBall eb(B, rp);
    std::mt19937_64 rng(5);
    int checked = 0;
    while (checked < 1000) {
      Word w = random_word(rng, 12);
      auto end = B.evaluate(w);
      if (!end) continue;
      bool inside = true;
      try {
        eb.prefix_vertices(w);
      } catch (out_of_ball const&) {
        inside = false;
      }
      if (!inside) continue;
      Word r = coset_reduce(eb, w);
      EXPECT_EQ(B.evaluate(r), end);
      EXPECT_EQ(electric_length(rp, r), electric_length(rp, w));
      EXPECT_EQ(coset_reduce(eb, r), r);
      ++checked;
    }
  }
}

TEST(Electric, ElectricGeodesicExamples) {
  Z2RelB g;
  auto v05 = *g.ball.evaluate(g.w("bbbbb"));
  EXPECT_EQ(g.str(electric_geodesic(g.eb, v05)), "bbbbb");
  auto v21 = *g.ball.evaluate(g.w("aab"));
  Word e = electric_geodesic(g.eb, v21);
  EXPECT_EQ(electric_length(g.rp, e), 2u);
  EXPECT_EQ(g.ball.evaluate(e), v21);
  EXPECT_EQ(g.str(e), "aab");
  EXPECT_TRUE(electric_geodesic(g.eb, 0).empty());
  EXPECT_THROW(electric_geodesic(g.eb, 10000), out_of_ball);
}

TEST(Electric, ElectricDistanceMatchesIndependentOracle) {
  // In Z^2 rel <b> the electric distance of (x, y) is |x|.
  Z2RelB g;
  for (Vertex v = 0; v < g.ball.size(); ++v) {
    int x = x_coord(g.ball.word(v));
    EXPECT_EQ(g.eb.electric_distance(v), static_cast<std::size_t>(std::abs(x)));
    Word e = electric_geodesic(g.eb, v);
    EXPECT_EQ(electric_length(g.rp, e), g.eb.electric_distance(v));
    EXPECT_EQ(g.ball.evaluate(e), v);
  }
  // In F2 rel <b> it is the number of a-letters of the reduced word.
  F2RelB f;
  for (Vertex v = 0; v < f.ball.size(); ++v)
    EXPECT_EQ(f.eb.electric_distance(v), electric_length(f.rp, f.ball.word(v)));
}

TEST(Electric, KLocalGeodesicExamples) {
  Z2RelB g;
  auto v = *g.ball.evaluate(g.w("aabbA"));
  Word e = electric_geodesic(g.eb, v);
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_TRUE(is_k_local_electric_geodesic(g.eb, e, k));
  EXPECT_FALSE(is_k_local_electric_geodesic(g.eb, g.w("aA"), 2));
  F2RelB f;
  EXPECT_TRUE(is_k_local_electric_geodesic(f.eb, f.w("bab"), 3));
  EXPECT_TRUE(is_k_local_electric_geodesic(f.eb, f.w("abA"), 2));
  EXPECT_FALSE(is_k_local_electric_geodesic(f.eb, f.w("abBA"), 2));
  EXPECT_TRUE(is_k_local_electric_geodesic(f.eb, f.w("abA"), 1));
}

TEST(Electric, AreaExactExamples) {
  Z2RelB g;
  EXPECT_EQ(electric_area_exact(g.rp, g.w("abAB"), 4).area, 1u);
  EXPECT_EQ(electric_area_exact(g.rp, g.w("abbABB"), 4).area, 2u);
  EXPECT_EQ(electric_area_exact(g.rp, Word{}, 4).area, 0u);
  EXPECT_THROW(electric_area_exact(g.rp, g.w("ab"), 4), domain_error);
  // with the ball the parabolic segments are canonicalized; answers agree
  EXPECT_EQ(electric_area_exact(g.rp, g.w("abbABB"), 4, &g.eb).area, 2u);
  // above n_max the answer is Unknown
  EXPECT_FALSE(electric_area_exact(g.rp, g.w("abbbABBB"), 2).area.has_value());
}

TEST(Electric, AreaOfCommutatorsGrowsLinearly) {
  Z2RelB g;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::string s = "a" + std::string(n, 'b') + "A" + std::string(n, 'B');
    EXPECT_EQ(electric_area_exact(g.rp, g.w(s.c_str()), 6, &g.eb).area, n) << s;
  }
}

TEST(Electric, AreaSubadditiveOnSplitLoops) {
  Z2RelB g;
  // u = [a,b], v = [a,b^2]: u v is a loop with area <= 1 + 2
  auto u = g.w("abAB"), v = g.w("abbABB");
  auto au = electric_area_exact(g.rp, u, 6, &g.eb).area;
  auto av = electric_area_exact(g.rp, v, 6, &g.eb).area;
  auto auv = electric_area_exact(g.rp, concat(u, v), 6, &g.eb).area;
  ASSERT_TRUE(au && av && auv);
  EXPECT_LE(*auv, *au + *av);
}

TEST(Electric, AreaUpperExamples) {
  Z2RelB g;
  auto r1 = electric_area_upper(g.eb, g.w("abAB"), 2);
  EXPECT_EQ(r1.bound, 1u);
  EXPECT_EQ(replay_area_certificate(g.eb, g.w("abAB"), r1.certificate), r1.bound);
  auto r2 = electric_area_upper(g.eb, g.w("abbABB"), 2);
  EXPECT_LE(r2.bound, 2u);
  EXPECT_GE(r2.bound, 2u);
  EXPECT_EQ(replay_area_certificate(g.eb, g.w("abbABB"), r2.certificate), r2.bound);
  EXPECT_EQ(electric_area_upper(g.eb, Word{}, 2).bound, 0u);
  EXPECT_THROW(electric_area_upper(g.eb, g.w("ab"), 2), domain_error);
}

TEST(Electric, AreaUpperDominatesExact) {
  Z2RelB g;
  for (auto s : {"abAB", "abbABB", "aabAAB", "abABabAB", "abbbABBB", "bAbaBBAbaB"}) {
    auto w = g.w(s);
    auto ex = electric_area_exact(g.rp, w, 6, &g.eb);
    auto up = electric_area_upper(g.eb, w, 2);
    ASSERT_TRUE(ex.area.has_value()) << s;
    EXPECT_GE(up.bound, *ex.area) << s;
    EXPECT_EQ(replay_area_certificate(g.eb, w, up.certificate), up.bound) << s;
  }
}

TEST(Electric, BcpControls) {
  F2RelB f;
  auto w = f.w("abbaB");
  auto same = bcp_compare_words(f.eb, w, w);
  EXPECT_EQ(same.constant(), 0u);
  auto bb = bcp_compare_words(f.eb, f.w("bbb"), f.w("bbb"));
  EXPECT_EQ(bb.max_unilateral_travel, 0u);
}

TEST(Electric, BcpScanOnTree) {
  F2RelB f;
  auto rep = bcp_scan(f.eb, 200, 1, 1.0, 0.0);
  EXPECT_EQ(rep.pairs, 200u);
  EXPECT_EQ(rep.unresolved, 0u);
  EXPECT_LE(rep.constant(), 2u);
  auto again = bcp_scan(f.eb, 200, 1, 1.0, 0.0, 2);
  EXPECT_EQ(again.constant(), rep.constant());
}
