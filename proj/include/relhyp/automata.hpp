#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "relhyp/error.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

using State = std::size_t;

// Total deterministic automaton over symbols 0..symbols()-1.
class Dfa {
 public:
  Dfa() = default;
  Dfa(std::size_t states, std::size_t symbols, State initial)
      : n_(states), k_(symbols), initial_(initial), delta_(states * symbols, 0), accept_(states, false) {
    if (states == 0) throw domain_error("dfa: needs at least one state");
    if (initial >= states) throw range_error("dfa: initial state out of range");
  }

  std::size_t states() const { return n_; }
  std::size_t symbols() const { return k_; }
  State initial() const { return initial_; }

  State next(State s, Letter x) const {
    if (x >= k_) throw unknown_symbol("dfa: symbol " + std::to_string(x) + " outside alphabet");
    return delta_[s * k_ + x];
  }
  void set_next(State s, Letter x, State t) {
    if (s >= n_ || t >= n_) throw range_error("dfa: state out of range");
    if (x >= k_) throw unknown_symbol("dfa: symbol outside alphabet");
    delta_[s * k_ + x] = t;
  }
  bool accepting(State s) const { return accept_.at(s); }
  void set_accepting(State s, bool a = true) { accept_.at(s) = a; }

  State state_after(Word const& w) const {
    State s = initial_;
    for (Letter x : w) s = next(s, x);
    return s;
  }
  bool run(Word const& w) const { return accepting(state_after(w)); }

  bool operator==(Dfa const&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  State initial_ = 0;
  std::vector<State> delta_;
  std::vector<bool> accept_;
};

inline bool dfa_run(Dfa const& M, Word const& w) { return M.run(w); }

class Nfa {
 public:
  Nfa(std::size_t states, std::size_t symbols)
      : n_(states), k_(symbols), delta_(states * symbols), accept_(states, false) {}

  std::size_t states() const { return n_; }
  std::size_t symbols() const { return k_; }

  void add_initial(State s) {
    if (s >= n_) throw range_error("nfa: state out of range");
    if (std::find(initial_.begin(), initial_.end(), s) == initial_.end()) initial_.push_back(s);
    std::sort(initial_.begin(), initial_.end());
  }
  std::vector<State> const& initial() const { return initial_; }

  void add_transition(State s, Letter x, State t) {
    if (s >= n_ || t >= n_) throw range_error("nfa: state out of range");
    if (x >= k_) throw unknown_symbol("nfa: symbol outside alphabet");
    auto& v = delta_[s * k_ + x];
    if (std::find(v.begin(), v.end(), t) == v.end()) v.push_back(t);
    std::sort(v.begin(), v.end());
  }
  std::vector<State> const& next(State s, Letter x) const { return delta_[s * k_ + x]; }

  bool accepting(State s) const { return accept_.at(s); }
  void set_accepting(State s, bool a = true) { accept_.at(s) = a; }

  // Direct simulation on state sets.
  bool run(Word const& w) const {
    std::vector<bool> cur(n_, false);
    for (State s : initial_) cur[s] = true;
    for (Letter x : w) {
      if (x >= k_) throw unknown_symbol("nfa: symbol outside alphabet");
      std::vector<bool> nxt(n_, false);
      for (State s = 0; s < n_; ++s)
        if (cur[s])
          for (State t : next(s, x)) nxt[t] = true;
      cur.swap(nxt);
    }
    for (State s = 0; s < n_; ++s)
      if (cur[s] && accept_[s]) return true;
    return false;
  }

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<State> initial_;
  std::vector<std::vector<State>> delta_;
  std::vector<bool> accept_;
};

// Subset construction over accessible subsets; the empty subset is the dead state.
inline Dfa determinize(Nfa const& N) {
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> subsets;
  std::vector<State> trans;
  ids.emplace(N.initial(), 0);
  subsets.push_back(N.initial());
  std::size_t k = N.symbols();
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (Letter x = 0; x < k; ++x) {
      std::vector<State> t;
      for (State s : subsets[i])
        for (State u : N.next(s, x)) t.push_back(u);
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
      auto [it, fresh] = ids.emplace(t, subsets.size());
      if (fresh) subsets.push_back(t);
      trans.push_back(it->second);
    }
  }
  Dfa D(subsets.size(), k, 0);
  for (State i = 0; i < subsets.size(); ++i) {
    for (Letter x = 0; x < k; ++x) D.set_next(i, x, trans[i * k + x]);
    for (State s : subsets[i])
      if (N.accepting(s)) D.set_accepting(i);
  }
  return D;
}

inline std::vector<bool> accessible_states(Dfa const& M) {
  std::vector<bool> seen(M.states(), false);
  std::deque<State> q{M.initial()};
  seen[M.initial()] = true;
  while (!q.empty()) {
    State s = q.front();
    q.pop_front();
    for (Letter x = 0; x < M.symbols(); ++x) {
      State t = M.next(s, x);
      if (!seen[t]) {
        seen[t] = true;
        q.push_back(t);
      }
    }
  }
  return seen;
}

// States from which some accepting state is reachable.
inline std::vector<bool> coaccessible_states(Dfa const& M) {
  std::vector<bool> live(M.states(), false);
  for (State s = 0; s < M.states(); ++s) live[s] = M.accepting(s);
  for (bool changed = true; changed;) {
    changed = false;
    for (State s = 0; s < M.states(); ++s) {
      if (live[s]) continue;
      for (Letter x = 0; x < M.symbols(); ++x)
        if (live[M.next(s, x)]) {
          live[s] = changed = true;
          break;
        }
    }
  }
  return live;
}

// Keeps the relative order of surviving states.
inline Dfa prune_inaccessible(Dfa const& M) {
  auto seen = accessible_states(M);
  std::vector<State> id(M.states(), 0);
  std::size_t n = 0;
  for (State s = 0; s < M.states(); ++s)
    if (seen[s]) id[s] = n++;
  Dfa P(n, M.symbols(), id[M.initial()]);
  for (State s = 0; s < M.states(); ++s) {
    if (!seen[s]) continue;
    P.set_accepting(id[s], M.accepting(s));
    for (Letter x = 0; x < M.symbols(); ++x) P.set_next(id[s], x, id[M.next(s, x)]);
  }
  return P;
}

// Moore refinement; output states numbered in BFS order from the initial state.
inline Dfa minimize(Dfa const& input) {
  Dfa M = prune_inaccessible(input);
  std::size_t n = M.states(), k = M.symbols();
  std::vector<std::size_t> block(n);
  for (State s = 0; s < n; ++s) block[s] = M.accepting(s) ? 1 : 0;
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> sig;
    std::vector<std::size_t> nb(n);
    for (State s = 0; s < n; ++s) {
      std::vector<std::size_t> key{block[s]};
      for (Letter x = 0; x < k; ++x) key.push_back(block[M.next(s, x)]);
      nb[s] = sig.emplace(std::move(key), sig.size()).first->second;
    }
    block.swap(nb);
    if (sig.size() == count) break;
    count = sig.size();
  }
  std::vector<State> id(count, count);
  std::vector<State> rep;
  std::deque<State> q{M.initial()};
  id[block[M.initial()]] = 0;
  rep.push_back(M.initial());
  while (!q.empty()) {
    State s = q.front();
    q.pop_front();
    for (Letter x = 0; x < k; ++x) {
      State t = M.next(s, x);
      if (id[block[t]] == count) {
        id[block[t]] = rep.size();
        rep.push_back(t);
        q.push_back(t);
      }
    }
  }
  Dfa out(rep.size(), k, 0);
  for (State i = 0; i < rep.size(); ++i) {
    out.set_accepting(i, M.accepting(rep[i]));
    for (Letter x = 0; x < k; ++x) out.set_next(i, x, id[block[M.next(rep[i], x)]]);
  }
  return out;
}

// Accessible states that can still reach acceptance.
inline std::size_t live_state_count(Dfa const& M) {
  auto acc = accessible_states(M);
  auto co = coaccessible_states(M);
  std::size_t n = 0;
  for (State s = 0; s < M.states(); ++s) n += (acc[s] && co[s]) ? 1 : 0;
  return n;
}

struct LanguageComparison {
  bool equal = true;
  std::optional<Word> counterexample;  // shortest, then least in symbol order
};

inline LanguageComparison language_equal(Dfa const& A, Dfa const& B) {
  if (A.symbols() != B.symbols()) throw interface_error("language_equal: alphabet sizes differ");
  std::size_t k = A.symbols();
  std::map<std::pair<State, State>, std::pair<std::size_t, Letter>> parent;
  std::vector<std::pair<State, State>> order;
  auto start = std::make_pair(A.initial(), B.initial());
  parent.emplace(start, std::make_pair(std::size_t(-1), Letter(0)));
  order.push_back(start);
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [a, b] = order[i];
    if (A.accepting(a) != B.accepting(b)) {
      Word w;
      for (std::size_t j = i; parent.at(order[j]).first != std::size_t(-1); j = parent.at(order[j]).first)
        w.push_back(parent.at(order[j]).second);
      std::reverse(w.begin(), w.end());
      return {false, w};
    }
    for (Letter x = 0; x < k; ++x) {
      auto nxt = std::make_pair(A.next(a, x), B.next(b, x));
      if (parent.emplace(nxt, std::make_pair(i, x)).second) order.push_back(nxt);
    }
  }
  return {};
}

// No accepted word has a rejected prefix.
inline bool prefix_closed(Dfa const& M) {
  auto acc = accessible_states(M);
  auto co = coaccessible_states(M);
  for (State s = 0; s < M.states(); ++s)
    if (acc[s] && co[s] && !M.accepting(s)) return false;
  return true;
}

inline std::string to_dot(Dfa const& M, Alphabet const* A = nullptr, bool hide_dead = true) {
  auto co = coaccessible_states(M);
  std::ostringstream os;
  os << "digraph dfa {\n  rankdir=LR;\n  start [shape=point];\n";
  for (State s = 0; s < M.states(); ++s) {
    if (hide_dead && !co[s]) continue;
    os << "  s" << s << " [shape=" << (M.accepting(s) ? "doublecircle" : "circle") << "];\n";
  }
  os << "  start -> s" << M.initial() << ";\n";
  for (State s = 0; s < M.states(); ++s) {
    if (hide_dead && !co[s]) continue;
    for (Letter x = 0; x < M.symbols(); ++x) {
      State t = M.next(s, x);
      if (hide_dead && !co[t]) continue;
      os << "  s" << s << " -> s" << t << " [label=\"" << (A ? A->name(x) : std::to_string(x)) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace relhyp
