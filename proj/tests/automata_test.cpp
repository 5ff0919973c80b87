#include <gtest/gtest.h>

#include <random>

#include "relhyp/automata.hpp"

using namespace relhyp;

namespace {

// Over {a=0, b=1}: 0 start, 1 after a, 2 seen "ab" (absorbing accept).
Dfa contains_ab() {
  Dfa M(3, 2, 0);
  M.set_next(0, 0, 1);
  M.set_next(0, 1, 0);
  M.set_next(1, 0, 1);
  M.set_next(1, 1, 2);
  M.set_next(2, 0, 2);
  M.set_next(2, 1, 2);
  M.set_accepting(2);
  return M;
}

// a* over {a, b}: state 1 is dead.
Dfa a_star() {
  Dfa M(2, 2, 0);
  M.set_next(0, 0, 0);
  M.set_next(0, 1, 1);
  M.set_next(1, 0, 1);
  M.set_next(1, 1, 1);
  M.set_accepting(0);
  return M;
}

// a*b over {a, b}.
Dfa a_star_b() {
  Dfa M(3, 2, 0);
  M.set_next(0, 0, 0);
  M.set_next(0, 1, 1);
  M.set_next(1, 0, 2);
  M.set_next(1, 1, 2);
  M.set_next(2, 0, 2);
  M.set_next(2, 1, 2);
  M.set_accepting(1);
  return M;
}

Dfa empty_language(std::size_t symbols) {
  Dfa M(1, symbols, 0);
  for (Letter x = 0; x < symbols; ++x) M.set_next(0, x, 0);
  return M;
}

// Freely reduced words over a=0, A=1, b=2, B=3, remembering the last two letters
// so that the machine is deliberately not minimal.
Dfa reduced_words_redundant() {
  // state 0: start; 1 + 4*p + l: last letter l with previous p (p=4 means none); 21: dead
  Dfa M(22, 4, 0);
  auto id = [](std::size_t prev, std::size_t last) { return 1 + 4 * prev + last; };
  auto inv = [](Letter x) { return x ^ 1u; };
  for (Letter x = 0; x < 4; ++x) M.set_next(0, x, id(4, x));
  for (std::size_t p = 0; p <= 4; ++p)
    for (std::size_t l = 0; l < 4; ++l)
      for (Letter x = 0; x < 4; ++x) M.set_next(id(p, l), x, x == inv(l) ? 21 : id(l, x));
  for (Letter x = 0; x < 4; ++x) M.set_next(21, x, 21);
  for (State s = 0; s < 21; ++s) M.set_accepting(s);
  return M;
}

bool reduced(Word const& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if ((w[i - 1] ^ 1u) == w[i]) return false;
  return true;
}

template <class F>
void for_all_words(std::size_t symbols, std::size_t max_len, F f) {
  Word w;
  auto rec = [&](auto&& self) -> void {
    f(w);
    if (w.size() == max_len) return;
    for (Letter x = 0; x < symbols; ++x) {
      w.push_back(x);
      self(self);
      w.pop_back();
    }
  };
  rec(rec);
}

}  // namespace

TEST(Automata, RunExamples) {
  auto M = contains_ab();
  EXPECT_TRUE(dfa_run(M, {0, 0, 1}));
  EXPECT_FALSE(dfa_run(M, {}));
  EXPECT_FALSE(dfa_run(M, {1, 0}));
  EXPECT_THROW(dfa_run(M, {2}), unknown_symbol);
}

TEST(Automata, DeterminizeExamples) {
  Nfa one(1, 2);
  one.add_initial(0);
  one.add_transition(0, 0, 0);
  one.set_accepting(0);
  auto D1 = determinize(one);
  EXPECT_EQ(live_state_count(D1), 1u);
  EXPECT_EQ(D1.states(), 2u);  // plus the empty-subset dead state

  // Sigma* ab: 0 loops, 0 -a-> 1, 1 -b-> 2 (accept)
  Nfa ends_ab(3, 2);
  ends_ab.add_initial(0);
  ends_ab.add_transition(0, 0, 0);
  ends_ab.add_transition(0, 1, 0);
  ends_ab.add_transition(0, 0, 1);
  ends_ab.add_transition(1, 1, 2);
  ends_ab.set_accepting(2);
  auto D2 = determinize(ends_ab);
  EXPECT_EQ(live_state_count(D2), 3u);
  EXPECT_TRUE(D2.run({1, 0, 1}));
  EXPECT_FALSE(D2.run({0, 1, 0}));

  Nfa none(2, 2);
  none.add_initial(0);
  none.add_transition(0, 0, 1);
  auto D3 = determinize(none);
  EXPECT_TRUE(language_equal(D3, empty_language(2)).equal);
}

TEST(Automata, PruneExamples) {
  auto M = a_star();
  Dfa N(3, 2, 0);
  for (State s = 0; s < 2; ++s)
    for (Letter x = 0; x < 2; ++x) N.set_next(s, x, M.next(s, x));
  N.set_next(2, 0, 2);
  N.set_next(2, 1, 2);
  N.set_accepting(0);
  N.set_accepting(2);
  auto P = prune_inaccessible(N);
  EXPECT_EQ(P.states(), 2u);
  EXPECT_TRUE(language_equal(P, N).equal);
  EXPECT_EQ(prune_inaccessible(P), P);

  Dfa U(2, 1, 0);
  U.set_next(0, 0, 0);
  U.set_next(1, 0, 1);
  U.set_accepting(1);
  EXPECT_TRUE(language_equal(prune_inaccessible(U), empty_language(1)).equal);
}

TEST(Automata, MinimizeExamples) {
  // two equivalent accepting states
  Dfa M(3, 1, 0);
  M.set_next(0, 0, 1);
  M.set_next(1, 0, 2);
  M.set_next(2, 0, 1);
  M.set_accepting(1);
  M.set_accepting(2);
  EXPECT_EQ(minimize(M).states(), 2u);
  auto C = contains_ab();
  EXPECT_EQ(minimize(C).states(), C.states());

  auto R = reduced_words_redundant();
  auto m = minimize(R);
  EXPECT_EQ(live_state_count(m), 5u);
  EXPECT_TRUE(language_equal(m, R).equal);
  for_all_words(4, 8, [&](Word const& w) { ASSERT_EQ(m.run(w), reduced(w)); });
  EXPECT_TRUE(prefix_closed(m));
}

TEST(Automata, LanguageEqualExamples) {
  auto M = contains_ab();
  EXPECT_TRUE(language_equal(M, minimize(M)).equal);
  auto r = language_equal(a_star(), a_star_b());
  ASSERT_FALSE(r.equal);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_NE(a_star().run(*r.counterexample), a_star_b().run(*r.counterexample));
  EXPECT_TRUE(r.counterexample->empty());  // epsilon is already distinguishing
  EXPECT_TRUE(language_equal(empty_language(2), empty_language(2)).equal);
  EXPECT_THROW(language_equal(empty_language(2), empty_language(3)), interface_error);
}

TEST(Automata, PrefixClosedExamples) {
  EXPECT_TRUE(prefix_closed(a_star()));
  // exactly {"ab"}
  Dfa E(4, 2, 0);
  for (State s = 0; s < 4; ++s)
    for (Letter x = 0; x < 2; ++x) E.set_next(s, x, 3);
  E.set_next(0, 0, 1);
  E.set_next(1, 1, 2);
  E.set_accepting(2);
  EXPECT_FALSE(prefix_closed(E));
  EXPECT_TRUE(prefix_closed(minimize(reduced_words_redundant())));
}

TEST(Automata, RandomNfaDeterminizeAgreesWithSimulation) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + rng() % 5, k = 2 + rng() % 2;
    Nfa N(n, k);
    for (State s = 0; s < n; ++s) {
      if (rng() % 3 == 0) N.add_initial(s);
      if (rng() % 3 == 0) N.set_accepting(s);
      for (Letter x = 0; x < k; ++x)
        for (State t = 0; t < n; ++t)
          if (rng() % 4 == 0) N.add_transition(s, x, t);
    }
    auto D = determinize(N);
    auto m = minimize(D);
    EXPECT_EQ(minimize(m), m);
    EXPECT_TRUE(language_equal(D, m).equal);
    EXPECT_TRUE(language_equal(D, prune_inaccessible(D)).equal);
    for_all_words(k, 6, [&](Word const& w) { ASSERT_EQ(D.run(w), N.run(w)); });
  }
}
