#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "relhyp/automata.hpp"
#include "relhyp/cayley.hpp"
#include "relhyp/electric.hpp"
#include "relhyp/error.hpp"
#include "relhyp/parallel.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

struct HeightFlags {
  bool additive = false;
  bool right_order_preserving = false;
  bool left_order_preserving = false;
  bool strongly_translation_invariant = false;
};

struct HeightFunction {
  std::string name;
  std::function<std::int64_t(Word const&)> eval;
  HeightFlags flags;
  std::int64_t K = 1;  // |H(w) - H(wx)| < K

  std::int64_t operator()(Word const& w) const { return eval(w); }
};

inline HeightFunction negative_length() {
  HeightFunction H;
  H.name = "-length";
  H.eval = [](Word const& w) { return -static_cast<std::int64_t>(w.size()); };
  H.flags = {true, true, true, true};
  H.K = 2;
  return H;
}

inline HeightFunction negative_electric_length(RelativePresentation const& rp, std::int64_t C) {
  if (C <= 0) throw domain_error("negative_electric_length: C must be positive");
  HeightFunction H;
  H.name = "-" + std::to_string(C) + "*electric-length";
  H.eval = [rp, C](Word const& w) { return -C * static_cast<std::int64_t>(electric_length(rp, w)); };
  H.flags = {true, true, true, true};
  H.K = C + 1;
  return H;
}

// Spot check of the asserted properties on random words; throws hypothesis_error.
inline void verify_height(HeightFunction const& H, Alphabet const& A, std::size_t samples = 200,
                          std::uint64_t seed = 1, std::size_t max_len = 10) {
  std::mt19937_64 rng(seed);
  auto rnd = [&] {
    Word w(rng() % (max_len + 1));
    for (auto& x : w) x = rng() % A.size();
    return w;
  };
  if (H({}) != 0 && H.flags.additive) throw hypothesis_error(H.name + ": additive height with H(e) != 0");
  for (std::size_t i = 0; i < samples; ++i) {
    Word u = rnd(), v = rnd();
    for (Letter x = 0; x < A.size(); ++x) {
      Word ux = u;
      ux.push_back(x);
      auto d = H(u) - H(ux);
      if (d >= H.K || -d >= H.K)
        throw hypothesis_error(H.name + ": bounded difference fails at '" + A.format(ux) + "'");
    }
    if (H.flags.additive && H(concat(u, v)) != H(u) + H(v))
      throw hypothesis_error(H.name + ": not additive on '" + A.format(u) + "', '" + A.format(v) + "'");
  }
}

struct BDelta {
  std::size_t delta = 0;
  std::vector<Vertex> elements;  // ball order, elements[0] is the identity
  std::vector<Word> z;           // z[i] is a B_delta-word for elements[i]
  std::size_t index(Vertex v) const {
    auto it = std::find(elements.begin(), elements.end(), v);
    return it == elements.end() ? npos : static_cast<std::size_t>(it - elements.begin());
  }
};

namespace detail {

// Simple paths from `start` inside `allowed`, calling f(path word, end vertex) at every node.
template <class F>
void simple_paths(GroupBall const& B, std::vector<char> const& allowed, Vertex start, std::size_t budget, F&& f) {
  std::vector<char> on(B.size(), 0);
  Word path;
  std::size_t nodes = 0;
  std::function<void(Vertex)> go = [&](Vertex v) {
    if (++nodes > budget) throw resource_error("simple path enumeration exceeded " + std::to_string(budget) + " nodes");
    on[v] = 1;
    f(path, v);
    for (Letter x = 0; x < B.alphabet().size(); ++x) {
      auto u = B.neighbor(v, x);
      if (!u || !allowed[*u] || on[*u]) continue;
      path.push_back(x);
      go(*u);
      path.pop_back();
    }
    on[v] = 0;
  };
  go(start);
}

inline std::vector<char> ball_around(GroupBall const& B, Vertex c, std::size_t delta) {
  std::vector<char> in(B.size(), 0);
  std::vector<std::size_t> d(B.size(), npos);
  std::queue<Vertex> q;
  d[c] = 0;
  q.push(c);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    in[v] = 1;
    if (d[v] == delta) continue;
    for (Letter x = 0; x < B.alphabet().size(); ++x)
      if (auto u = B.neighbor(v, x); u && d[*u] == npos) {
        d[*u] = d[v] + 1;
        q.push(*u);
      }
  }
  return in;
}

// Least total cost from `start` to every vertex, walking inside `allowed`.
inline std::vector<std::optional<std::int64_t>> cheapest(GroupBall const& B, std::vector<char> const& allowed,
                                                          Vertex start, std::vector<std::int64_t> const& cost) {
  std::vector<std::optional<std::int64_t>> d(B.size());
  using Item = std::pair<std::int64_t, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  d[start] = 0;
  pq.push({0, start});
  while (!pq.empty()) {
    auto [c, v] = pq.top();
    pq.pop();
    if (c != *d[v]) continue;
    for (Letter x = 0; x < B.alphabet().size(); ++x) {
      auto u = B.neighbor(v, x);
      if (!u || !allowed[*u]) continue;
      auto nc = c + cost[x];
      if (!d[*u] || nc < *d[*u]) {
        d[*u] = nc;
        pq.push({nc, *u});
      }
    }
  }
  return d;
}

}  // namespace detail

// z_g is the shortlex geodesic unless H is given, in which case it is the H-maximal
// simple B_delta-path to g (ties by shortlex).
inline BDelta ball_b_delta(GroupBall const& B, std::size_t delta, HeightFunction const* H = nullptr,
                           std::size_t budget = 1000000) {
  if (delta > B.radius()) throw domain_error("ball_b_delta: delta exceeds the ball radius");
  BDelta out;
  out.delta = delta;
  for (Vertex v = 0; v < B.size(); ++v)
    if (B.distance(v) <= delta) {
      out.elements.push_back(v);
      out.z.push_back(B.word(v));
    }
  if (H) {
    std::vector<char> allowed(B.size(), 0);
    for (Vertex v : out.elements) allowed[v] = 1;
    std::map<Vertex, std::pair<std::int64_t, Word>> best;
    detail::simple_paths(B, allowed, 0, budget, [&](Word const& p, Vertex v) {
      auto h = (*H)(p);
      auto it = best.find(v);
      if (it == best.end() || h > it->second.first || (h == it->second.first && shortlex_less(p, it->second.second)))
        best[v] = {h, p};
    });
    for (std::size_t i = 0; i < out.elements.size(); ++i) out.z[i] = best.at(out.elements[i]).second;
  }
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    Vertex v = 0;
    for (Letter x : out.z[i]) {
      v = *B.neighbor(v, x);
      if (B.distance(v) > delta) throw error("ball_b_delta: z-word leaves B_delta");
    }
    if (v != out.elements[i]) throw error("ball_b_delta: z-word ends at the wrong element");
  }
  return out;
}

enum class KernelRoute { automatic, shortest_path, enumerate };

struct TransitionKernel {
  BDelta bd;
  std::size_t symbols = 0;
  KernelRoute route = KernelRoute::automatic;
  std::vector<std::optional<std::int64_t>> table;  // [x][g][h], nullopt is +infinity
  std::vector<std::optional<std::int64_t>> initial;  // Phi(e)(g) before clamping

  std::size_t n() const { return bd.elements.size(); }
  std::optional<std::int64_t> at(Letter x, std::size_t g, std::size_t h) const {
    return table.at((x * n() + g) * n() + h);
  }
};

namespace detail {

inline bool nonnegative_additive(HeightFunction const& H, Alphabet const& A) {
  if (!H.flags.additive) return false;
  for (Letter x = 0; x < A.size(); ++x)
    if (H({x}) > 0) return false;
  return true;
}

}  // namespace detail

// T[x][g][h] = inf over simple w from g^-1 to x h^-1 inside B_delta(1) u B_delta(x) of
// H(x) - H(z_g^-1 w z_h) + H(z_g z_g^-1).
inline TransitionKernel transition_kernel(GroupBall const& B, std::size_t delta, HeightFunction const& H,
                                          KernelRoute route = KernelRoute::automatic, std::size_t threads = 1,
                                          std::size_t budget = 20000000) {
  if (!H.flags.strongly_translation_invariant)
    throw hypothesis_error("transition_kernel: height '" + H.name + "' is not strongly translation invariant");
  if (delta < 1) throw domain_error("transition_kernel: delta must be at least 1");
  if (B.radius() < delta + 1) throw domain_error("transition_kernel: ball radius must be at least delta + 1");
  Alphabet const& A = B.alphabet();
  bool additive = detail::nonnegative_additive(H, A);
  if (route == KernelRoute::automatic) route = additive ? KernelRoute::shortest_path : KernelRoute::enumerate;
  if (route == KernelRoute::shortest_path && !additive)
    throw hypothesis_error("transition_kernel: shortest-path route needs an additive height with H(x) <= 0");

  TransitionKernel T;
  T.bd = ball_b_delta(B, delta, &H);
  T.symbols = A.size();
  T.route = route;
  std::size_t n = T.n();
  T.table.assign(A.size() * n * n, std::nullopt);

  std::vector<std::int64_t> cost(A.size());
  for (Letter x = 0; x < A.size(); ++x) cost[x] = -H({x});
  std::vector<std::int64_t> hz(n), hzz(n);
  std::vector<Word> zinv(n);
  std::vector<Vertex> ginv(n);
  for (std::size_t i = 0; i < n; ++i) {
    hz[i] = H(T.bd.z[i]);
    zinv[i] = word_inverse(A, T.bd.z[i]);
    hzz[i] = H(concat(T.bd.z[i], zinv[i]));
    ginv[i] = *B.walk(0, zinv[i]);
  }

  std::vector<char> inner(B.size(), 0);
  for (Vertex v : T.bd.elements) inner[v] = 1;

  // initial state: v runs from 1 to g^-1 inside B_delta(1)
  T.initial.assign(n, std::nullopt);
  if (route == KernelRoute::shortest_path) {
    auto d = detail::cheapest(B, inner, 0, cost);
    for (std::size_t g = 0; g < n; ++g)
      if (d[ginv[g]]) T.initial[g] = *d[ginv[g]] - hz[g];
  } else {
    std::map<Vertex, std::vector<std::size_t>> by_end;
    for (std::size_t g = 0; g < n; ++g) by_end[ginv[g]].push_back(g);
    detail::simple_paths(B, inner, 0, budget, [&](Word const& v, Vertex e) {
      auto it = by_end.find(e);
      if (it == by_end.end()) return;
      for (std::size_t g : it->second) {
        auto val = -H(concat(v, T.bd.z[g]));
        if (!T.initial[g] || val < *T.initial[g]) T.initial[g] = val;
      }
    });
  }

  parallel_for(A.size(), threads, [&](std::size_t xi) {
    Letter x = static_cast<Letter>(xi);
    Vertex xv = *B.neighbor(0, x);
    auto around_x = detail::ball_around(B, xv, delta);
    std::vector<char> region(B.size(), 0);
    for (Vertex v = 0; v < B.size(); ++v) region[v] = inner[v] || around_x[v];
    std::vector<Vertex> end(n);
    std::map<Vertex, std::vector<std::size_t>> by_end;
    for (std::size_t h = 0; h < n; ++h) {
      end[h] = *B.walk(xv, zinv[h]);
      by_end[end[h]].push_back(h);
    }
    auto hx = H({x});
    for (std::size_t g = 0; g < n; ++g) {
      auto slot = [&](std::size_t h) -> std::optional<std::int64_t>& { return T.table[(x * n + g) * n + h]; };
      if (route == KernelRoute::shortest_path) {
        auto d = detail::cheapest(B, region, ginv[g], cost);
        for (std::size_t h = 0; h < n; ++h)
          if (d[end[h]]) slot(h) = hx + hz[g] - hz[h] + *d[end[h]];
      } else {
        detail::simple_paths(B, region, ginv[g], budget, [&](Word const& w, Vertex e) {
          auto it = by_end.find(e);
          if (it == by_end.end()) return;
          for (std::size_t h : it->second) {
            auto val = hx - H(concat(concat(zinv[g], w), T.bd.z[h])) + hzz[g];
            if (!slot(h) || val < *slot(h)) slot(h) = val;
          }
        });
      }
    }
  });
  return T;
}

struct FftpAutomaton {
  Dfa dfa;
  std::vector<std::vector<std::int64_t>> states;  // state functions; empty for Fail
  State fail = 0;
  std::int64_t cap = 0;  // 2 K delta
  TransitionKernel kernel;
};

inline std::optional<std::vector<std::int64_t>> fftp_step(TransitionKernel const& T, std::vector<std::int64_t> const& phi,
                                                           Letter x, std::int64_t cap) {
  std::size_t n = T.n();
  std::vector<std::int64_t> out(n, cap);
  for (std::size_t h = 0; h < n; ++h) {
    std::optional<std::int64_t> best;
    for (std::size_t g = 0; g < n; ++g)
      if (auto t = T.at(x, g, h)) {
        auto v = phi[g] + *t;
        if (!best || v < *best) best = v;
      }
    if (best) out[h] = std::min(*best, cap);
    if (out[h] < 0) return std::nullopt;
  }
  return out;
}

inline FftpAutomaton build_fftp_automaton(GroupBall const& B, std::size_t delta, HeightFunction const& H,
                                          KernelRoute route = KernelRoute::automatic, std::size_t state_cap = 100000,
                                          std::size_t threads = 1) {
  if (!H.flags.right_order_preserving)
    throw hypothesis_error("build_fftp_automaton: height '" + H.name + "' is not right order preserving");
  FftpAutomaton M;
  M.kernel = transition_kernel(B, delta, H, route, threads);
  M.cap = 2 * H.K * static_cast<std::int64_t>(delta);
  std::size_t n = M.kernel.n(), k = B.alphabet().size();

  std::vector<std::int64_t> init(n);
  for (std::size_t g = 0; g < n; ++g) {
    init[g] = M.kernel.initial[g] ? std::min(*M.kernel.initial[g], M.cap) : M.cap;
    if (init[g] < 0) throw hypothesis_error("build_fftp_automaton: the trivial word is not maximising");
  }
  std::map<std::vector<std::int64_t>, State> id;
  std::vector<std::size_t> trans;
  auto intern = [&](std::vector<std::int64_t> const& s) {
    auto [it, fresh] = id.emplace(s, M.states.size());
    if (fresh) {
      if (M.states.size() >= state_cap)
        throw resource_error("build_fftp_automaton: more than " + std::to_string(state_cap) + " state functions (" +
                             std::to_string(id.size()) + " discovered)");
      M.states.push_back(s);
    }
    return it->second;
  };
  intern(init);
  intern({});  // Fail is the empty vector
  M.fail = 1;
  for (State s = 0; s < M.states.size(); ++s) {
    for (Letter x = 0; x < k; ++x) {
      State t = M.fail;
      if (s != M.fail)
        if (auto nxt = fftp_step(M.kernel, M.states[s], x, M.cap)) t = intern(*nxt);
      trans.push_back(t);
    }
  }
  M.dfa = Dfa(M.states.size(), k, 0);
  for (State s = 0; s < M.states.size(); ++s) {
    M.dfa.set_accepting(s, s != M.fail);
    for (Letter x = 0; x < k; ++x) M.dfa.set_next(s, x, trans[s * k + x]);
  }
  return M;
}

// All words of length <= len_cap evaluating to g with maximal H among them.
inline std::vector<Word> maximizing_words_bruteforce(GroupBall const& B, HeightFunction const& H, Vertex g,
                                                     std::size_t len_cap) {
  if (g >= B.size()) throw out_of_ball("maximizing_words_bruteforce: element outside the ball");
  Alphabet const& A = B.alphabet();
  std::vector<Word> best;
  std::optional<std::int64_t> top;
  Word w;
  std::function<void(std::optional<Vertex>)> go = [&](std::optional<Vertex> v) {
    auto at = v ? v : B.locate(w);
    if (at == g) {
      auto h = H(w);
      if (!top || h > *top) {
        top = h;
        best.clear();
      }
      if (h == *top) best.push_back(w);
    }
    if (w.size() == len_cap) return;
    for (Letter x = 0; x < A.size(); ++x) {
      w.push_back(x);
      go(v ? B.neighbor(*v, x) : std::nullopt);
      w.pop_back();
    }
  };
  go(Vertex{0});
  std::sort(best.begin(), best.end(), shortlex_less);
  return best;
}

enum class TravelMode { synchronous, asynchronous };

struct FellowTravel {
  std::size_t distance = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairing;  // matched prefix lengths
};

inline FellowTravel fellow_travel_check(GroupBall const& B, Word const& w1, Word const& w2, TravelMode mode) {
  auto prefixes = [&](Word const& w) {
    std::vector<Vertex> p{0};
    for (Letter x : w) {
      auto n = B.neighbor(p.back(), x);
      if (!n) throw out_of_ball("fellow_travel_check: prefix of '" + B.alphabet().format(w) + "' leaves the ball");
      p.push_back(*n);
    }
    return p;
  };
  auto p1 = prefixes(w1), p2 = prefixes(w2);
  auto d = [&](std::size_t i, std::size_t j) {
    auto r = distance(B, p1[i], p2[j]);
    if (!r) throw out_of_ball("fellow_travel_check: prefix distance not resolvable inside the ball");
    return *r;
  };
  FellowTravel out;
  if (mode == TravelMode::synchronous) {
    std::size_t L = std::max(w1.size(), w2.size());
    for (std::size_t t = 0; t <= L; ++t) {
      std::size_t i = std::min(t, w1.size()), j = std::min(t, w2.size());
      out.distance = std::max(out.distance, d(i, j));
      out.pairing.push_back({i, j});
    }
    return out;
  }
  // bottleneck path through the prefix grid with steps (1,0), (0,1), (1,1)
  std::size_t n = p1.size(), m = p2.size();
  std::vector<std::size_t> D(n * m), best(n * m, npos), from(n * m, npos);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) D[i * m + j] = d(i, j);
  best[0] = D[0];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t c = i * m + j;
      if (c == 0) continue;
      std::size_t preds[3] = {i > 0 ? c - m : npos, j > 0 ? c - 1 : npos, i > 0 && j > 0 ? c - m - 1 : npos};
      for (std::size_t p : preds)
        if (p != npos && best[p] != npos) {
          auto v = std::max(best[p], D[c]);
          if (best[c] == npos || v < best[c]) {
            best[c] = v;
            from[c] = p;
          }
        }
    }
  out.distance = best[n * m - 1];
  for (std::size_t c = n * m - 1; c != npos; c = from[c]) out.pairing.push_back({c / m, c % m});
  std::reverse(out.pairing.begin(), out.pairing.end());
  return out;
}

}  // namespace relhyp
