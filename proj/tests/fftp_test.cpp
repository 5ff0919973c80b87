#include <gtest/gtest.h>

#include <functional>

#include "fixtures.hpp"
#include "relhyp/fftp.hpp"

using namespace relhyp;

namespace {

// Every word of length <= n, in shortlex order.
std::vector<Word> all_words(std::size_t symbols, std::size_t n) {
  std::vector<Word> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == n) continue;
    for (Letter x = 0; x < symbols; ++x) {
      Word w = out[i];
      w.push_back(x);
      out.push_back(w);
    }
  }
  return out;
}

// Brute-force geodesic oracle: |w| equals the ball distance of its endpoint.
bool geodesic_word(GroupBall const& B, Word const& w) {
  auto v = B.evaluate(w);
  return v && B.distance(*v) == w.size();
}

}  // namespace

TEST(Fftp, BallBDeltaExamples) {
  GroupBall Z2(fixtures::z2(), 3), F2(fixtures::f2(), 3);
  auto b1 = ball_b_delta(Z2, 1);
  EXPECT_EQ(b1.elements.size(), 5u);
  for (auto const& z : b1.z) EXPECT_LE(z.size(), 1u);
  EXPECT_EQ(ball_b_delta(F2, 2).elements.size(), 17u);
  auto b0 = ball_b_delta(Z2, 0);
  ASSERT_EQ(b0.elements.size(), 1u);
  EXPECT_TRUE(b0.z[0].empty());
  EXPECT_THROW(ball_b_delta(Z2, 4), domain_error);
  auto H = negative_length();
  auto bh = ball_b_delta(Z2, 2, &H);
  auto bs = ball_b_delta(Z2, 2);
  EXPECT_EQ(bh.z, bs.z);  // H-maximal with shortlex ties is the shortlex geodesic
}

TEST(Fftp, HeightChecks) {
  auto A = fixtures::z2().alphabet();
  EXPECT_NO_THROW(verify_height(negative_length(), A));
  auto rp = fixtures::z2_rel_b();
  EXPECT_NO_THROW(verify_height(negative_electric_length(rp, 3), A));
  HeightFunction bad = negative_length();
  bad.K = 1;
  EXPECT_THROW(verify_height(bad, A), hypothesis_error);
  HeightFunction sq = negative_length();
  sq.eval = [](Word const& w) { return -static_cast<std::int64_t>(w.size() * w.size()); };
  sq.K = 100;
  EXPECT_THROW(verify_height(sq, A), hypothesis_error);
}

TEST(Fftp, KernelExamples) {
  GroupBall Z(fixtures::z(), 4);
  auto T = transition_kernel(Z, 1, negative_length());
  // B_1 in ball order: 1, a, A
  ASSERT_EQ(T.n(), 3u);
  EXPECT_EQ(T.at(0, 1, 0), 0);
  for (Letter x = 0; x < 2; ++x) EXPECT_LE(*T.at(x, 0, 0), 0);

  HeightFunction H = negative_length();
  H.flags.strongly_translation_invariant = false;
  EXPECT_THROW(transition_kernel(Z, 1, H), hypothesis_error);
  EXPECT_THROW(transition_kernel(Z, 0, negative_length()), domain_error);
  EXPECT_THROW(transition_kernel(GroupBall(fixtures::z(), 1), 1, negative_length()), domain_error);
}

TEST(Fftp, KernelOnTreeHasNoInfiniteEntries) {
  // B_d(1) u B_d(x) is connected and contains every endpoint, so W is never empty
  GroupBall F(fixtures::f2(), 3);
  auto T1 = transition_kernel(F, 1, negative_length(), KernelRoute::shortest_path);
  auto T2 = transition_kernel(F, 1, negative_length(), KernelRoute::enumerate);
  EXPECT_EQ(T1.table, T2.table);
  bool some_inf = false;
  for (auto const& t : T1.table) some_inf |= !t.has_value();
  EXPECT_FALSE(some_inf);
}

TEST(Fftp, KernelRoutesAgree) {
  for (auto P : {fixtures::z(), fixtures::f2(), fixtures::z2()}) {
    GroupBall B(P, 3);
    auto T1 = transition_kernel(B, 2, negative_length(), KernelRoute::shortest_path);
    auto T2 = transition_kernel(B, 2, negative_length(), KernelRoute::enumerate);
    EXPECT_EQ(T1.table, T2.table);
    EXPECT_EQ(T1.initial, T2.initial);
    auto T3 = transition_kernel(B, 2, negative_length(), KernelRoute::shortest_path, 3);
    EXPECT_EQ(T1.table, T3.table);
  }
  auto rp = fixtures::z2_rel_b();
  GroupBall B(rp.base(), 3);
  auto H = negative_electric_length(rp, 2);
  EXPECT_EQ(transition_kernel(B, 2, H, KernelRoute::shortest_path).table,
            transition_kernel(B, 2, H, KernelRoute::enumerate).table);
}

TEST(Fftp, ZAcceptor) {
  GroupBall Z(fixtures::z(), 8);
  auto M = build_fftp_automaton(Z, 2, negative_length());
  EXPECT_TRUE(M.dfa.run({}));
  EXPECT_TRUE(prefix_closed(M.dfa));
  EXPECT_EQ(live_state_count(minimize(M.dfa)), 3u);
  for (auto const& w : all_words(2, 8)) EXPECT_EQ(M.dfa.run(w), geodesic_word(Z, w)) << Z.alphabet().format(w);
}

TEST(Fftp, F2AcceptorIsFreelyReducedWords) {
  GroupBall F(fixtures::f2(), 7);
  auto M = build_fftp_automaton(F, 2, negative_length());
  EXPECT_EQ(live_state_count(minimize(M.dfa)), 5u);
  auto& A = F.alphabet();
  for (auto const& w : all_words(4, 7)) EXPECT_EQ(M.dfa.run(w), is_freely_reduced(A, w)) << A.format(w);
}

TEST(Fftp, Z2AcceptorIsGeodesicLanguage) {
  GroupBall Z2(fixtures::z2(), 7);
  auto M = build_fftp_automaton(Z2, 2, negative_length());
  EXPECT_TRUE(prefix_closed(M.dfa));
  for (auto const& w : all_words(4, 7)) EXPECT_EQ(M.dfa.run(w), geodesic_word(Z2, w)) << Z2.alphabet().format(w);
}

TEST(Fftp, FailIsAbsorbingAndSubwordsAccepted) {
  GroupBall Z2(fixtures::z2(), 6);
  auto M = build_fftp_automaton(Z2, 2, negative_length());
  for (Letter x = 0; x < 4; ++x) EXPECT_EQ(M.dfa.next(M.fail, x), M.fail);
  EXPECT_FALSE(M.dfa.accepting(M.fail));
  for (auto const& w : all_words(4, 6)) {
    if (!M.dfa.run(w)) continue;
    for (std::size_t i = 0; i <= w.size(); ++i)
      for (std::size_t j = i; j <= w.size(); ++j)
        EXPECT_TRUE(M.dfa.run(Word(w.begin() + i, w.begin() + j)));
  }
  // state functions stay in range
  for (State s = 0; s < M.states.size(); ++s)
    for (auto v : M.states[s]) {
      EXPECT_GE(v, 0);
      EXPECT_LE(v, M.cap);
    }
}

TEST(Fftp, ElectricHeightAcceptor) {
  auto rp = fixtures::z2_rel_b();
  GroupBall B(rp.base(), 7);
  ElectricBall eb(B, rp);
  auto H = negative_electric_length(rp, 2);
  auto M = build_fftp_automaton(B, 2, H);
  EXPECT_TRUE(prefix_closed(M.dfa));
  // maximising words are those whose electric length is the electric distance
  for (auto const& w : all_words(4, 5)) {
    auto v = *B.evaluate(w);
    bool maximal = electric_length(rp, w) == eb.electric_distance(v);
    EXPECT_EQ(M.dfa.run(w), maximal) << B.alphabet().format(w);
  }
}

TEST(Fftp, StateCap) {
  GroupBall Z2(fixtures::z2(), 4);
  EXPECT_THROW(build_fftp_automaton(Z2, 2, negative_length(), KernelRoute::automatic, 2), resource_error);
}

TEST(Fftp, MaximizingWordsBruteforce) {
  GroupBall Z2(fixtures::z2(), 4);
  auto& A = Z2.alphabet();
  auto H = negative_length();
  auto ab = maximizing_words_bruteforce(Z2, H, *Z2.evaluate(A.parse("ab")), 4);
  ASSERT_EQ(ab.size(), 2u);
  EXPECT_EQ(A.format(ab[0]), "ab");
  EXPECT_EQ(A.format(ab[1]), "ba");
  auto e = maximizing_words_bruteforce(Z2, H, 0, 4);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_TRUE(e[0].empty());
  auto rp = fixtures::z2_rel_b();
  auto b3 = maximizing_words_bruteforce(Z2, negative_electric_length(rp, 2), *Z2.evaluate(A.parse("bbb")), 4);
  ASSERT_EQ(b3.size(), 1u);
  EXPECT_EQ(A.format(b3[0]), "bbb");
  EXPECT_THROW(maximizing_words_bruteforce(Z2, H, 999, 2), out_of_ball);
}

TEST(Fftp, FellowTravelExamples) {
  GroupBall Z2(fixtures::z2(), 5);
  auto& A = Z2.alphabet();
  auto w = A.parse("abba");
  EXPECT_EQ(fellow_travel_check(Z2, w, w, TravelMode::synchronous).distance, 0u);
  EXPECT_EQ(fellow_travel_check(Z2, w, w, TravelMode::asynchronous).distance, 0u);
  EXPECT_EQ(fellow_travel_check(Z2, A.parse("ab"), A.parse("ba"), TravelMode::synchronous).distance, 2u);
  auto as = fellow_travel_check(Z2, A.parse("abbb"), A.parse("bbba"), TravelMode::asynchronous);
  EXPECT_LE(as.distance, 2u);
  EXPECT_EQ(as.pairing.front(), (std::pair<std::size_t, std::size_t>{0, 0}));
  EXPECT_EQ(as.pairing.back(), (std::pair<std::size_t, std::size_t>{4, 4}));
  // asynchronous never exceeds synchronous
  auto sy = fellow_travel_check(Z2, A.parse("abbb"), A.parse("bbba"), TravelMode::synchronous);
  EXPECT_LE(as.distance, sy.distance);
  EXPECT_THROW(fellow_travel_check(Z2, A.parse("aaaaaa"), w, TravelMode::synchronous), out_of_ball);
}
