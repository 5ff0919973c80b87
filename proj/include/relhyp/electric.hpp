#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "relhyp/cayley.hpp"
#include "relhyp/parallel.hpp"

namespace relhyp {

struct ParabolicFamily {
  std::string name;
  std::vector<Letter> generators;       // closed under inverses
  std::vector<std::size_t> relators;    // indices into the base relators
};

class RelativePresentation {
 public:
  RelativePresentation() = default;
  RelativePresentation(Presentation base, std::vector<ParabolicFamily> families)
      : base_(std::move(base)), families_(std::move(families)) {
    Alphabet const& A = base_.alphabet();
    family_of_.assign(A.size(), npos);
    for (std::size_t i = 0; i < families_.size(); ++i) {
      auto& f = families_[i];
      for (Letter y : f.generators) {
        if (y >= A.size()) throw unknown_symbol("parabolic generator outside the alphabet");
        if (family_of_[y] != npos && family_of_[y] != i)
          throw domain_error("parabolic families share generator '" + A.name(y) + "'");
        family_of_[y] = i;
      }
      for (Letter y : f.generators)
        if (family_of_[A.inverse(y)] != i)
          throw domain_error("family '" + f.name + "' is not closed under inverses");
      std::sort(f.generators.begin(), f.generators.end());
      f.generators.erase(std::unique(f.generators.begin(), f.generators.end()), f.generators.end());
      for (std::size_t r : f.relators) {
        if (r >= base_.relators().size()) throw range_error("parabolic relator index out of range");
        for (Letter x : base_.relators()[r])
          if (family_of_[x] != i)
            throw domain_error("relator '" + A.format(base_.relators()[r]) + "' is not over family '" + f.name + "'");
      }
    }
    parabolic_relator_.assign(base_.relators().size(), false);
    for (auto const& f : families_)
      for (std::size_t r : f.relators) parabolic_relator_[r] = true;
  }

  // Family from generator names; its relators are all base relators over those generators.
  static ParabolicFamily family(Presentation const& P, std::string name, std::vector<std::string> const& gens) {
    Alphabet const& A = P.alphabet();
    ParabolicFamily f{std::move(name), {}, {}};
    for (auto const& g : gens) {
      auto x = A.find(g);
      if (!x) throw unknown_symbol("parabolic generator '" + g + "' is not a generator");
      f.generators.push_back(*x);
      f.generators.push_back(A.inverse(*x));
    }
    for (std::size_t r = 0; r < P.relators().size(); ++r) {
      bool inside = std::all_of(P.relators()[r].begin(), P.relators()[r].end(), [&](Letter x) {
        return std::find(f.generators.begin(), f.generators.end(), x) != f.generators.end();
      });
      if (inside) f.relators.push_back(r);
    }
    return f;
  }

  Presentation const& base() const { return base_; }
  Alphabet const& alphabet() const { return base_.alphabet(); }
  std::vector<ParabolicFamily> const& families() const { return families_; }

  std::optional<std::size_t> family_of(Letter x) const {
    if (family_of_.at(x) == npos) return std::nullopt;
    return family_of_[x];
  }
  bool is_parabolic(Letter x) const { return family_of_.at(x) != npos; }
  bool is_parabolic_relator(std::size_t r) const { return parabolic_relator_.at(r); }

 private:
  Presentation base_;
  std::vector<ParabolicFamily> families_;
  std::vector<std::size_t> family_of_;
  std::vector<bool> parabolic_relator_;
};

inline std::size_t electric_length(RelativePresentation const& rp, Word const& w) {
  std::size_t n = 0;
  for (Letter x : w) n += rp.is_parabolic(x) ? 0 : 1;
  return n;
}

// Cayley ball together with coset structure and electric distances from the identity.
class ElectricBall {
 public:
  ElectricBall(GroupBall const& ball, RelativePresentation const& rp) : ball_(&ball), rp_(&rp) {
    if (!(ball.alphabet() == rp.alphabet())) throw interface_error("ball and presentation alphabets differ");
    std::size_t n = ball.size(), F = rp.families().size();
    coset_.assign(F, std::vector<Vertex>(n, npos));
    for (std::size_t i = 0; i < F; ++i)
      for (Vertex s = 0; s < n; ++s) {
        if (coset_[i][s] != npos) continue;
        // vertices are visited in increasing order, so s is the least vertex of its component
        std::deque<Vertex> q{s};
        coset_[i][s] = s;
        while (!q.empty()) {
          Vertex v = q.front();
          q.pop_front();
          for (Letter y : rp.families()[i].generators)
            if (auto u = ball.neighbor(v, y); u && coset_[i][*u] == npos) {
              coset_[i][*u] = s;
              q.push_back(*u);
            }
        }
      }
    // 0/1 BFS on electric length, then word length
    dist_.assign(n, {npos, npos});
    dist_[0] = {0, 0};
    using Item = std::tuple<std::size_t, std::size_t, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.emplace(0, 0, 0);
    while (!pq.empty()) {
      auto [e, l, v] = pq.top();
      pq.pop();
      if (std::make_pair(e, l) != dist_[v]) continue;
      for (Letter x = 0; x < alphabet().size(); ++x)
        if (auto u = ball.neighbor(v, x)) {
          std::pair<std::size_t, std::size_t> c{e + (rp.is_parabolic(x) ? 0 : 1), l + 1};
          if (c < dist_[*u]) {
            dist_[*u] = c;
            pq.emplace(c.first, c.second, *u);
          }
        }
    }
  }

  GroupBall const& ball() const { return *ball_; }
  RelativePresentation const& presentation() const { return *rp_; }
  Alphabet const& alphabet() const { return ball_->alphabet(); }

  Vertex coset(std::size_t family, Vertex v) const { return coset_.at(family).at(v); }

  // Electric distance from the identity, measured inside the ball.
  std::size_t electric_distance(Vertex v) const { return dist_.at(v).first; }

  // Shortlex-least path word from u to v using only generators of `family`.
  std::optional<Word> parabolic_path(std::size_t family, Vertex u, Vertex v) const {
    if (coset(family, u) != coset(family, v)) return std::nullopt;
    auto const& gens = rp_->families()[family].generators;
    std::unordered_map<Vertex, std::size_t> d{{v, 0}};
    std::deque<Vertex> q{v};
    while (!q.empty() && !d.count(u)) {
      Vertex c = q.front();
      q.pop_front();
      for (Letter y : gens)
        if (auto t = ball_->neighbor(c, y); t && !d.count(*t)) {
          d[*t] = d[c] + 1;
          q.push_back(*t);
        }
    }
    return greedy_path(u, v, d, gens);
  }

  // Shortlex-least word of minimal (electric length, length) from u to v inside the ball.
  Word electric_path(Vertex u, Vertex v) const {
    std::size_t k = alphabet().size();
    std::vector<std::pair<std::size_t, std::size_t>> d(ball_->size(), {npos, npos});
    using Item = std::tuple<std::size_t, std::size_t, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    d[v] = {0, 0};
    pq.emplace(0, 0, v);
    while (!pq.empty()) {
      auto [e, l, c] = pq.top();
      pq.pop();
      if (std::make_pair(e, l) != d[c]) continue;
      for (Letter x = 0; x < k; ++x)
        if (auto t = ball_->neighbor(c, x)) {
          // t -x^-1-> c, so the forward letter into c is inverse(x)
          Letter fwd = alphabet().inverse(x);
          std::pair<std::size_t, std::size_t> cand{e + (rp_->is_parabolic(fwd) ? 0 : 1), l + 1};
          if (cand < d[*t]) {
            d[*t] = cand;
            pq.emplace(cand.first, cand.second, *t);
          }
        }
    }
    if (d[u].first == npos) throw out_of_ball("no path inside the ball between the vertices");
    Word w;
    Vertex c = u;
    while (c != v) {
      for (Letter x = 0; x < k; ++x) {
        auto t = ball_->neighbor(c, x);
        if (!t) continue;
        std::pair<std::size_t, std::size_t> step{d[*t].first + (rp_->is_parabolic(x) ? 0 : 1), d[*t].second + 1};
        if (d[*t].first != npos && step == d[c]) {
          w.push_back(x);
          c = *t;
          break;
        }
      }
    }
    return w;
  }

  // Vertex of the subword's element, tolerating prefixes that leave the ball.
  Vertex element(Word const& w) const {
    auto v = ball_->locate(w);
    if (!v) throw out_of_ball("element of '" + alphabet().format(w) + "' is outside the ball");
    return *v;
  }

  std::vector<Vertex> prefix_vertices(Word const& w) const {
    std::vector<Vertex> out{0};
    for (Letter x : w) {
      auto n = ball_->neighbor(out.back(), x);
      if (!n) throw out_of_ball("prefix of '" + alphabet().format(w) + "' leaves the ball");
      out.push_back(*n);
    }
    return out;
  }

 private:
  Word greedy_path(Vertex u, Vertex v, std::unordered_map<Vertex, std::size_t> const& d,
                   std::vector<Letter> const& gens) const {
    Word w;
    Vertex c = u;
    while (c != v) {
      for (Letter y : gens) {
        auto t = ball_->neighbor(c, y);
        if (!t) continue;
        auto it = d.find(*t);
        if (it != d.end() && it->second + 1 == d.at(c)) {
          w.push_back(y);
          c = *t;
          break;
        }
      }
    }
    return w;
  }

  GroupBall const* ball_;
  RelativePresentation const* rp_;
  std::vector<std::vector<Vertex>> coset_;
  std::vector<std::pair<std::size_t, std::size_t>> dist_;
};

struct Penetration {
  std::size_t family = 0;
  Vertex coset = 0;  // least ball vertex of the coset
  std::size_t t0 = 0;
  std::size_t t1 = 0;
  bool operator==(Penetration const&) const = default;
};

// Maximal runs of prefixes inside one coset, per family, ordered by entry time.
inline std::vector<Penetration> penetrations(ElectricBall const& eb, Word const& w) {
  auto pv = eb.prefix_vertices(w);
  std::vector<Penetration> out;
  for (std::size_t i = 0; i < eb.presentation().families().size(); ++i) {
    std::size_t t0 = 0;
    for (std::size_t t = 1; t <= pv.size(); ++t) {
      if (t == pv.size() || eb.coset(i, pv[t]) != eb.coset(i, pv[t0])) {
        out.push_back({i, eb.coset(i, pv[t0]), t0, t - 1});
        t0 = t;
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](auto const& a, auto const& b) { return a.t0 < b.t0; });
  return out;
}

inline bool backtracks(ElectricBall const& eb, Word const& w) {
  auto ps = penetrations(eb, w);
  std::map<std::pair<std::size_t, Vertex>, int> seen;
  for (auto const& p : ps)
    if (++seen[{p.family, p.coset}] > 1) return true;
  return false;
}

struct CosetSegment {
  std::size_t begin = 0, end = 0;  // letter range [begin, end) in the input word
  Word replacement;
};

// Replaces each maximal single-family segment by the shortlex parabolic geodesic.
inline std::pair<Word, std::vector<CosetSegment>> coset_reduce_segments(ElectricBall const& eb, Word const& w) {
  auto const& rp = eb.presentation();
  auto pv = eb.prefix_vertices(w);
  Word out;
  std::vector<CosetSegment> segs;
  std::size_t i = 0;
  while (i < w.size()) {
    auto f = rp.family_of(w[i]);
    if (!f) {
      out.push_back(w[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < w.size() && rp.family_of(w[j]) == f) ++j;
    auto p = eb.parabolic_path(*f, pv[i], pv[j]);
    if (!p) throw out_of_ball("parabolic segment endpoints are not joined inside the ball");
    Word seg(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j));
    if (*p != seg) segs.push_back({i, j, *p});
    out.insert(out.end(), p->begin(), p->end());
    i = j;
  }
  return {out, segs};
}

inline Word coset_reduce(ElectricBall const& eb, Word const& w) { return coset_reduce_segments(eb, w).first; }

inline Word electric_geodesic(ElectricBall const& eb, Vertex g) {
  if (g >= eb.ball().size()) throw out_of_ball("vertex not in ball");
  return eb.electric_path(0, g);
}

inline bool is_k_local_electric_geodesic(ElectricBall const& eb, Word const& w, std::size_t k) {
  auto const& rp = eb.presentation();
  eb.prefix_vertices(w);
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::size_t e = 0;
    for (std::size_t j = i; j < w.size(); ++j) {
      e += rp.is_parabolic(w[j]) ? 0 : 1;
      if (e > k) break;
      Word sub(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j + 1));
      if (eb.electric_distance(eb.element(sub)) != e) return false;
    }
  }
  return true;
}

struct AreaResult {
  std::optional<std::size_t> area;  // nullopt: Unknown (above n_max or over budget)
  std::size_t nodes = 0;
  std::string reason;
};

struct AreaSearchConfig {
  std::size_t node_budget = 5'000'000;
  std::size_t zero_cost_cap = 6;  // parabolic moves per path when no ball is supplied
  std::size_t length_slack = 0;   // 0: twice the longest relator
};

namespace detail {

// Iterative deepening over relator insertions on cyclic words; only non-parabolic relators cost.
class AreaSearch {
 public:
  AreaSearch(RelativePresentation const& rp, ElectricBall const* eb, AreaSearchConfig cfg)
      : rp_(rp), eb_(eb), cfg_(cfg) {
    Alphabet const& A = rp.alphabet();
    by_last_.resize(A.size());
    auto const& R = rp.base().relators();
    for (std::size_t r = 0; r < R.size(); ++r) {
      if (eb_ && rp.is_parabolic_relator(r)) continue;  // absorbed by parabolic canonical forms
      for (auto& v : relator_variants(A, R[r])) {
        moves_.push_back({v, rp.is_parabolic_relator(r) ? 0u : 1u});
        by_last_[moves_.back().word.back()].push_back(moves_.size() - 1);
      }
    }
  }

  AreaResult run(Word const& w, std::size_t n_max) {
    Word c = canonical(w);
    cap_ = c.size() + (cfg_.length_slack ? cfg_.length_slack : 2 * rp_.base().max_relator_length()) + 2;
    for (std::size_t bound = 0; bound <= n_max; ++bound) {
      memo_.clear();
      if (dfs(c, bound, 0)) return {bound, nodes_, "found"};
      if (nodes_ > cfg_.node_budget) return {std::nullopt, nodes_, "node budget exhausted"};
    }
    return {std::nullopt, nodes_, "area exceeds n_max"};
  }

 private:
  struct Move {
    Word word;
    unsigned cost;
  };

  Word canonical(Word const& w) const {
    Alphabet const& A = rp_.alphabet();
    Word c = cyclic_reduce(A, w);
    if (!eb_) return least_rotation(c);
    for (int pass = 0; pass < 64 && !c.empty(); ++pass) {
      // rotate so that no parabolic segment wraps around
      std::size_t start = 0;
      while (start < c.size() && rp_.family_of(c[start]) &&
             rp_.family_of(c[start]) == rp_.family_of(c[(start + c.size() - 1) % c.size()]))
        ++start;
      if (start == c.size()) start = 0;
      Word r = cyclic_permute(c, start);
      Word out;
      std::size_t i = 0;
      while (i < r.size()) {
        auto f = rp_.family_of(r[i]);
        if (!f) {
          out.push_back(r[i++]);
          continue;
        }
        std::size_t j = i;
        while (j < r.size() && rp_.family_of(r[j]) == f) ++j;
        Word seg(r.begin() + static_cast<std::ptrdiff_t>(i), r.begin() + static_cast<std::ptrdiff_t>(j));
        Word rep = seg;
        if (auto v = eb_->ball().evaluate(seg))
          if (auto p = eb_->parabolic_path(*f, 0, *v)) rep = *p;
        out.insert(out.end(), rep.begin(), rep.end());
        i = j;
      }
      Word next = cyclic_reduce(A, out);
      bool stable = least_rotation(next) == least_rotation(c);
      c = std::move(next);
      if (stable) break;
    }
    return least_rotation(c);
  }

  bool dfs(Word const& c, std::size_t budget, std::size_t zero_used) {
    if (c.empty()) return true;
    if (++nodes_ > cfg_.node_budget) return false;
    auto key = std::make_pair(c, zero_used);
    if (auto it = memo_.find(key); it != memo_.end() && it->second >= budget) return false;
    memo_[key] = budget;
    Alphabet const& A = rp_.alphabet();
    for (std::size_t p = 0; p < c.size(); ++p)
      for (std::size_t mi : by_last_[A.inverse(c[p])]) {
        auto const& m = moves_[mi];
        if (m.cost > budget) continue;
        if (m.cost == 0 && zero_used >= cfg_.zero_cost_cap) continue;
        Word t = c;
        t.insert(t.begin() + static_cast<std::ptrdiff_t>(p), m.word.begin(), m.word.end());
        Word n = canonical(t);
        if (n.size() > cap_) continue;
        if (dfs(n, budget - m.cost, zero_used + (m.cost == 0 ? 1 : 0))) return true;
        if (nodes_ > cfg_.node_budget) return false;
      }
    return false;
  }

  RelativePresentation const& rp_;
  ElectricBall const* eb_;
  AreaSearchConfig cfg_;
  std::vector<Move> moves_;
  std::vector<std::vector<std::size_t>> by_last_;
  std::map<std::pair<Word, std::size_t>, std::size_t> memo_;
  std::size_t nodes_ = 0;
  std::size_t cap_ = 0;
};

}  // namespace detail

// Least number of non-parabolic relator conjugates whose product is w.
inline AreaResult electric_area_exact(RelativePresentation const& rp, Word const& w, std::size_t n_max,
                                      ElectricBall const* eb = nullptr, AreaSearchConfig cfg = {}) {
  check_word(rp.alphabet(), w);
  auto wp = WordProblemOracle(rp.base()).decide(w);
  if (wp.answer == Triviality::non_trivial)
    throw domain_error("electric_area_exact: '" + rp.alphabet().format(w) + "' is not trivial (" + wp.reason + ")");
  return detail::AreaSearch(rp, eb, cfg).run(w, n_max);
}

struct AreaMove {
  enum class Kind { coset_reduce, length_reduce, terminal };
  Kind kind = Kind::coset_reduce;
  std::size_t begin = 0, end = 0;  // range in the word before the move
  Word before;                     // whole word before the move
  Word replacement;                // new contents of the range
  Word loop;                       // length_reduce / terminal: loop whose area was paid
  std::size_t cost = 0;
};

struct AreaUpperResult {
  std::size_t bound = 0;
  std::size_t per_reduction = 0;  // largest single length-reduction cost
  std::size_t terminal = 0;       // area of the final k-local geodesic loop
  std::size_t reductions = 0;
  std::vector<AreaMove> certificate;
};

namespace detail {

inline Word splice(Word const& w, std::size_t b, std::size_t e, Word const& rep) {
  Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(b));
  out.insert(out.end(), rep.begin(), rep.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(e), w.end());
  return out;
}

}  // namespace detail

// Alternates coset reduction and replacement of the shortest non-geodesic subword of
// electric length <= k; each replacement is paid for with the exact area of the small loop.
inline AreaUpperResult electric_area_upper(ElectricBall const& eb, Word const& w, std::size_t k = 2,
                                           std::size_t piece_n_max = 8, AreaSearchConfig cfg = {}) {
  auto const& rp = eb.presentation();
  Alphabet const& A = rp.alphabet();
  if (eb.element(w) != 0) throw domain_error("electric_area_upper: word is not a loop");
  AreaUpperResult res;
  Word cur = free_reduce(A, w);
  auto exact = [&](Word const& loop) {
    auto r = electric_area_exact(rp, loop, piece_n_max, &eb, cfg);
    if (!r.area) throw resource_error("area oracle Unknown on '" + A.format(loop) + "': " + r.reason);
    return *r.area;
  };
  while (true) {
    auto [reduced, segs] = coset_reduce_segments(eb, cur);
    for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
      res.certificate.push_back({AreaMove::Kind::coset_reduce, it->begin, it->end, cur, it->replacement, {}, 0});
      cur = detail::splice(cur, it->begin, it->end, it->replacement);
    }
    cur = free_reduce(A, cur);
    bool found = false;
    for (std::size_t len = 2; len <= cur.size() && !found; ++len)
      for (std::size_t i = 0; i + len <= cur.size() && !found; ++i) {
        Word sub(cur.begin() + static_cast<std::ptrdiff_t>(i), cur.begin() + static_cast<std::ptrdiff_t>(i + len));
        std::size_t e = electric_length(rp, sub);
        if (e > k) continue;
        Vertex g = eb.element(sub);
        if (eb.electric_distance(g) >= e) continue;
        Word xi = electric_geodesic(eb, g);
        Word loop = concat(sub, word_inverse(A, xi));
        std::size_t cost = exact(loop);
        res.certificate.push_back({AreaMove::Kind::length_reduce, i, i + len, cur, xi, loop, cost});
        res.bound += cost;
        res.per_reduction = std::max(res.per_reduction, cost);
        ++res.reductions;
        cur = free_reduce(A, detail::splice(cur, i, i + len, xi));
        found = true;
      }
    if (!found) break;
  }
  res.terminal = cur.empty() ? 0 : exact(cur);
  res.certificate.push_back({AreaMove::Kind::terminal, 0, cur.size(), cur, {}, cur, res.terminal});
  res.bound += res.terminal;
  return res;
}

// Re-applies the moves, checking each range and replacement, and returns the total cost.
inline std::optional<std::size_t> replay_area_certificate(ElectricBall const& eb, Word const& w,
                                                          std::vector<AreaMove> const& cert) {
  Alphabet const& A = eb.alphabet();
  Word cur = free_reduce(A, w);
  std::size_t total = 0;
  for (auto const& m : cert) {
    if (m.before != cur) cur = free_reduce(A, cur);
    if (m.before != cur || m.end > cur.size() || m.begin > m.end) return std::nullopt;
    Word seg(cur.begin() + static_cast<std::ptrdiff_t>(m.begin), cur.begin() + static_cast<std::ptrdiff_t>(m.end));
    switch (m.kind) {
      case AreaMove::Kind::coset_reduce:
        if (eb.element(seg) != eb.element(m.replacement)) return std::nullopt;
        break;
      case AreaMove::Kind::length_reduce:
        if (m.loop != concat(seg, word_inverse(A, m.replacement))) return std::nullopt;
        break;
      case AreaMove::Kind::terminal:
        if (m.loop != cur) return std::nullopt;
        total += m.cost;
        return total;
    }
    total += m.cost;
    cur = detail::splice(cur, m.begin, m.end, m.replacement);
  }
  return std::nullopt;
}

struct BcpReport {
  std::size_t pairs = 0;
  std::size_t max_entry_gap = 0;
  std::size_t max_exit_gap = 0;
  std::size_t max_unilateral_travel = 0;
  std::size_t unresolved = 0;  // distances that fell outside the ball
  double lambda = 1.0;
  double epsilon = 0.0;
  std::size_t constant() const { return std::max({max_entry_gap, max_exit_gap, max_unilateral_travel}); }
};

namespace detail {

inline void bcp_compare(ElectricBall const& eb, Word const& u, Word const& v, BcpReport& rep) {
  auto pu = penetrations(eb, u), pv = penetrations(eb, v);
  auto vu = eb.prefix_vertices(u), vv = eb.prefix_vertices(v);
  auto dist = [&](Vertex a, Vertex b) -> std::optional<std::size_t> { return distance(eb.ball(), a, b); };
  auto one_side = [&](std::vector<Penetration> const& P, std::vector<Penetration> const& Q,
                      std::vector<Vertex> const& VP, std::vector<Vertex> const& VQ) {
    for (auto const& p : P) {
      auto q = std::find_if(Q.begin(), Q.end(), [&](auto const& x) { return x.family == p.family && x.coset == p.coset; });
      if (q == Q.end()) {
        auto d = dist(VP[p.t0], VP[p.t1]);
        if (!d) ++rep.unresolved;
        else rep.max_unilateral_travel = std::max(rep.max_unilateral_travel, *d);
        continue;
      }
      auto d0 = dist(VP[p.t0], VQ[q->t0]), d1 = dist(VP[p.t1], VQ[q->t1]);
      if (!d0 || !d1) {
        ++rep.unresolved;
        continue;
      }
      rep.max_entry_gap = std::max(rep.max_entry_gap, *d0);
      rep.max_exit_gap = std::max(rep.max_exit_gap, *d1);
    }
  };
  one_side(pu, pv, vu, vv);
  one_side(pv, pu, vv, vu);
}

}  // namespace detail

// Compares penetrations of electric geodesics from 1 to g and to h, with d(g, h) <= 1.
inline BcpReport bcp_scan(ElectricBall const& eb, std::size_t samples, std::uint64_t seed,
                          double lambda = 1.0, double epsilon = 0.0, std::size_t threads = 1) {
  GroupBall const& B = eb.ball();
  std::vector<Vertex> inner;
  for (Vertex v = 0; v < B.size(); ++v)
    if (B.distance(v) + 1 <= B.radius()) inner.push_back(v);
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t s = 0; s < samples; ++s) {
    Vertex g = inner[std::uniform_int_distribution<std::size_t>(0, inner.size() - 1)(rng)];
    std::size_t pick = std::uniform_int_distribution<std::size_t>(0, B.alphabet().size())(rng);
    Vertex h = pick == B.alphabet().size() ? g : *B.neighbor(g, pick);
    pairs.emplace_back(g, h);
  }
  std::vector<BcpReport> parts(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    detail::bcp_compare(eb, electric_geodesic(eb, pairs[i].first), electric_geodesic(eb, pairs[i].second), parts[i]);
  });
  BcpReport rep;
  rep.pairs = pairs.size();
  rep.lambda = lambda;
  rep.epsilon = epsilon;
  for (auto const& p : parts) {
    rep.max_entry_gap = std::max(rep.max_entry_gap, p.max_entry_gap);
    rep.max_exit_gap = std::max(rep.max_exit_gap, p.max_exit_gap);
    rep.max_unilateral_travel = std::max(rep.max_unilateral_travel, p.max_unilateral_travel);
    rep.unresolved += p.unresolved;
  }
  return rep;
}

// Scan of explicit word pairs (used for controls such as identical paths).
inline BcpReport bcp_compare_words(ElectricBall const& eb, Word const& u, Word const& v) {
  BcpReport rep;
  rep.pairs = 1;
  detail::bcp_compare(eb, u, v, rep);
  return rep;
}

}  // namespace relhyp
