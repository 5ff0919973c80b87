#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "relhyp/error.hpp"
#include "relhyp/words.hpp"

namespace relhyp {

using Vertex = std::size_t;
inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Exponent-sum map to Z^n modulo the relator lattice, kept in Hermite normal form.
class Abelianization {
 public:
  Abelianization() = default;
  explicit Abelianization(Presentation const& P) : alphabet_(P.alphabet()) {
    Alphabet const& A = P.alphabet();
    gen_of_.assign(A.size(), 0);
    sign_.assign(A.size(), 1);
    for (Letter x = 0; x < A.size(); ++x)
      if (x < A.inverse(x)) {
        gen_of_[x] = gen_of_[A.inverse(x)] = n_;
        sign_[A.inverse(x)] = -1;
        ++n_;
      }
    for (auto const& r : P.relators()) rows_.push_back(exponents(r));
    hermite();
  }

  std::size_t rank_of_free_part() const { return n_ - rows_.size(); }
  std::size_t generators() const { return n_; }

  std::vector<std::int64_t> exponents(Word const& w) const {
    std::vector<std::int64_t> v(n_, 0);
    for (Letter x : w) v[gen_of_[x]] += sign_[x];
    return v;
  }

  // Canonical representative of v modulo the lattice.
  std::vector<std::int64_t> reduce(std::vector<std::int64_t> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      auto const& row = rows_[i];
      std::size_t c = pivots_[i];
      std::int64_t p = row[c];
      std::int64_t q = v[c] / p;
      if (v[c] - q * p < 0) --q;
      if (q != 0)
        for (std::size_t j = 0; j < n_; ++j) v[j] -= q * row[j];
    }
    return v;
  }

  std::vector<std::int64_t> key(Word const& w) const { return reduce(exponents(w)); }

  bool is_zero(Word const& w) const {
    auto v = key(w);
    return std::all_of(v.begin(), v.end(), [](std::int64_t a) { return a == 0; });
  }

 private:
  void hermite() {
    std::vector<std::vector<std::int64_t>> rows = rows_;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n_ && r < rows.size(); ++c) {
      // gcd-combine rows r.. on column c
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        while (rows[i][c] != 0) {
          std::int64_t q = rows[r][c] / rows[i][c];
          for (std::size_t j = 0; j < n_; ++j) rows[r][j] -= q * rows[i][j];
          std::swap(rows[r], rows[i]);
        }
      }
      if (rows[r][c] == 0) continue;
      if (rows[r][c] < 0)
        for (auto& a : rows[r]) a = -a;
      pivots_.push_back(c);
      ++r;
    }
    rows.resize(r);
    // reduce entries above pivots into [0, pivot)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < i; ++k) {
        std::size_t c = pivots_[i];
        std::int64_t p = rows[i][c];
        std::int64_t q = rows[k][c] / p;
        if (rows[k][c] - q * p < 0) --q;
        for (std::size_t j = 0; j < n_; ++j) rows[k][j] -= q * rows[i][j];
      }
    rows_ = rows;
  }

  Alphabet alphabet_;
  std::size_t n_ = 0;
  std::vector<std::size_t> gen_of_;
  std::vector<std::int64_t> sign_;
  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

enum class Triviality { trivial, non_trivial, unknown };

inline char const* to_string(Triviality t) {
  switch (t) {
    case Triviality::trivial: return "Trivial";
    case Triviality::non_trivial: return "NonTrivial";
    default: return "Unknown";
  }
}

// Rotate the current cyclic word, insert a relator variant before `position`,
// then freely and cyclically reduce.
struct RelatorStep {
  std::size_t rotate = 0;
  std::size_t position = 0;
  Word inserted;
};

struct WordProblemResult {
  Triviality answer = Triviality::unknown;
  std::vector<RelatorStep> certificate;
  std::string reason;
};

struct OracleConfig {
  enum class Strategy { bounded_search, dehn };
  Strategy strategy = Strategy::bounded_search;
  std::size_t budget = 100000;     // relator applications
  std::size_t length_cap = 0;      // 0: |w| + 2 * max relator length
  std::size_t max_passes = 1000;   // dehn strategy
};

inline Word apply_step(Alphabet const& A, Word const& c, RelatorStep const& s) {
  Word r = cyclic_permute(c, s.rotate);
  if (s.position > r.size()) throw range_error("relator step position out of range");
  r.insert(r.begin() + static_cast<std::ptrdiff_t>(s.position), s.inserted.begin(), s.inserted.end());
  return cyclic_reduce(A, r);
}

// Checks that every inserted word is a relator variant and the steps end at the empty word.
inline bool replay_certificate(Presentation const& P, Word const& w, std::vector<RelatorStep> const& cert) {
  std::set<Word> variants;
  for (auto const& r : P.relators())
    for (auto& v : relator_variants(P.alphabet(), r)) variants.insert(v);
  Word c = cyclic_reduce(P.alphabet(), w);
  for (auto const& s : cert) {
    if (!variants.count(s.inserted)) return false;
    if (s.rotate > c.size() || s.position > c.size()) return false;
    c = apply_step(P.alphabet(), c, s);
  }
  return c.empty();
}

class WordProblemOracle {
 public:
  explicit WordProblemOracle(Presentation P, OracleConfig cfg = {})
      : P_(std::move(P)), cfg_(cfg), ab_(P_) {
    for (auto const& r : P_.relators())
      for (auto& v : relator_variants(P_.alphabet(), r)) {
        if (std::find(variants_.begin(), variants_.end(), v) == variants_.end()) variants_.push_back(v);
      }
    by_last_.resize(P_.alphabet().size());
    for (std::size_t i = 0; i < variants_.size(); ++i) by_last_[variants_[i].back()].push_back(i);
    sixth_ = !variants_.empty() && small_cancellation_sixth();
  }

  // Every piece (common prefix of two distinct relator variants) is shorter than 1/6 of each.
  bool small_cancellation_sixth() const {
    for (std::size_t i = 0; i < variants_.size(); ++i)
      for (std::size_t j = 0; j < variants_.size(); ++j) {
        if (i == j) continue;
        auto const &u = variants_[i], &v = variants_[j];
        std::size_t m = 0;
        while (m < u.size() && m < v.size() && u[m] == v[m]) ++m;
        if (6 * m >= u.size()) return false;
      }
    return true;
  }

  Presentation const& presentation() const { return P_; }
  OracleConfig const& config() const { return cfg_; }
  Abelianization const& abelianization() const { return ab_; }

  WordProblemResult decide(Word const& w, std::size_t length_cap = 0) const {
    check_word(P_.alphabet(), w);
    Alphabet const& A = P_.alphabet();
    Word c = cyclic_reduce(A, w);
    if (c.empty()) return {Triviality::trivial, {}, "free reduction"};
    if (!ab_.is_zero(c)) return {Triviality::non_trivial, {}, "abelianization"};
    if (P_.relators().empty()) return {Triviality::non_trivial, {}, "free group"};
    if (cfg_.strategy == OracleConfig::Strategy::dehn) return dehn(c);
    // Dehn's algorithm decides the word problem for C'(1/6) presentations.
    if (sixth_) {
      auto r = dehn(c);
      if (r.answer == Triviality::non_trivial) r.reason = "dehn reduction under C'(1/6)";
      return r;
    }
    std::size_t cap = length_cap ? length_cap : cfg_.length_cap;
    if (cap == 0) cap = w.size() + 2 * P_.max_relator_length();
    cap = std::max(cap, c.size());
    return search(c, cap);
  }

 private:
  // Best-first on length; every move cancels at least the letter it is inserted before.
  WordProblemResult search(Word const& start, std::size_t cap) const {
    Alphabet const& A = P_.alphabet();
    struct Node {
      Word word;
      std::size_t parent;
      RelatorStep step;
    };
    std::vector<Node> nodes{{start, npos, {}}};
    std::set<Word> seen{least_rotation(start)};
    using Item = std::tuple<std::size_t, std::int64_t, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> open;
    open.emplace(start.size(), 0, 0);
    std::size_t applications = 0;
    std::int64_t tick = 0;
    while (!open.empty()) {
      auto [len, order, id] = open.top();
      open.pop();
      Word const cur = nodes[id].word;
      for (std::size_t p = 0; p < cur.size(); ++p) {
        for (std::size_t vi : by_last_[A.inverse(cur[p])]) {
          if (++applications > cfg_.budget) return {Triviality::unknown, {}, "budget exhausted"};
          RelatorStep st{0, p, variants_[vi]};
          Word nxt = apply_step(A, cur, st);
          if (nxt.size() > cap) continue;
          if (!seen.insert(least_rotation(nxt)).second) continue;
          nodes.push_back({nxt, id, st});
          if (nxt.empty()) {
            std::vector<RelatorStep> cert;
            for (std::size_t j = nodes.size() - 1; nodes[j].parent != npos; j = nodes[j].parent)
              cert.push_back(nodes[j].step);
            std::reverse(cert.begin(), cert.end());
            return {Triviality::trivial, cert, "relator search"};
          }
          open.emplace(nxt.size(), --tick, nodes.size() - 1);
        }
      }
    }
    return {Triviality::non_trivial, {}, "closure under length cap exhausted"};
  }

  // Greedy replacement of more than half a relator by the complement.
  WordProblemResult dehn(Word c) const {
    Alphabet const& A = P_.alphabet();
    std::vector<RelatorStep> cert;
    for (std::size_t pass = 0; pass < cfg_.max_passes && !c.empty(); ++pass) {
      bool moved = false;
      for (std::size_t rot = 0; rot < c.size() && !moved; ++rot) {
        Word r = cyclic_permute(c, rot);
        for (auto const& q : variants_) {
          std::size_t m = 0;
          while (m < q.size() && m < r.size() && q[m] == r[m]) ++m;
          if (2 * m > q.size()) {
            RelatorStep st{rot, 0, word_inverse(A, q)};
            c = apply_step(A, c, st);
            cert.push_back(std::move(st));
            moved = true;
            break;
          }
        }
      }
      if (!moved) break;
    }
    if (c.empty()) return {Triviality::trivial, cert, "dehn reduction"};
    return {Triviality::non_trivial, {}, "dehn-reduced word is nonempty"};
  }

  Presentation P_;
  OracleConfig cfg_;
  Abelianization ab_;
  std::vector<Word> variants_;
  std::vector<std::vector<std::size_t>> by_last_;
  bool sixth_ = false;
};

inline WordProblemResult word_problem(Presentation const& P, Word const& w, OracleConfig const& cfg = {}) {
  return WordProblemOracle(P, cfg).decide(w);
}

// Radius-R ball of the Cayley graph; vertex 0 is the identity, vertices in shortlex order.
class GroupBall {
 public:
  GroupBall(Presentation const& P, OracleConfig const& cfg, std::size_t radius)
      : oracle_(P, cfg), radius_(radius) {
    build();
  }
  explicit GroupBall(Presentation const& P, std::size_t radius) : GroupBall(P, OracleConfig{}, radius) {}

  std::size_t radius() const { return radius_; }
  std::size_t size() const { return words_.size(); }
  Alphabet const& alphabet() const { return oracle_.presentation().alphabet(); }
  Presentation const& presentation() const { return oracle_.presentation(); }
  WordProblemOracle const& oracle() const { return oracle_; }

  Word const& word(Vertex v) const {
    check(v);
    return words_[v];
  }
  std::size_t distance(Vertex v) const {
    check(v);
    return words_[v].size();
  }
  std::optional<Vertex> neighbor(Vertex v, Letter x) const {
    check(v);
    Vertex t = edges_[v * alphabet().size() + x];
    if (t == npos) return std::nullopt;
    return t;
  }
  std::optional<Vertex> find_word(Word const& canonical) const {
    auto it = index_.find(canonical);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Follows w from `start`; nullopt as soon as a prefix leaves the ball.
  std::optional<Vertex> walk(Vertex start, Word const& w) const {
    Vertex v = start;
    for (Letter x : w) {
      auto n = neighbor(v, x);
      if (!n) return std::nullopt;
      v = *n;
    }
    return v;
  }
  std::optional<Vertex> evaluate(Word const& w) const { return walk(0, w); }

  // Element of w if it lies in the ball, even when prefixes of w leave it.
  std::optional<Vertex> locate(Word const& w) const {
    Word r = free_reduce(alphabet(), w);
    if (auto v = evaluate(r)) return v;
    auto k = oracle_.abelianization().key(r);
    auto it = by_key_.find(k);
    if (it == by_key_.end()) return std::nullopt;
    for (Vertex u : it->second) {
      Word t = concat(r, word_inverse(alphabet(), words_[u]));
      auto res = oracle_.decide(t);
      if (res.answer == Triviality::trivial) return u;
      if (res.answer == Triviality::unknown)
        throw incomplete_ball("cannot compare '" + alphabet().format(r) + "' with '" +
                              alphabet().format(words_[u]) + "'");
    }
    return std::nullopt;
  }

  std::optional<Vertex> inverse(Vertex g) const { return walk(0, word_inverse(alphabet(), word(g))); }

  std::optional<Vertex> multiply(Vertex g, Vertex h) const {
    if (auto v = walk(g, word(h))) return v;
    return locate(concat(word(g), word(h)));
  }

  std::vector<Vertex> layer(std::size_t r) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < size(); ++v)
      if (words_[v].size() == r) out.push_back(v);
    return out;
  }

 private:
  void check(Vertex v) const {
    if (v >= words_.size()) throw range_error("vertex " + std::to_string(v) + " not in ball");
  }

  Vertex add(Word w) {
    Vertex v = words_.size();
    by_key_[oracle_.abelianization().key(w)].push_back(v);
    index_.emplace(w, v);
    words_.push_back(std::move(w));
    edges_.resize(words_.size() * alphabet().size(), npos);
    return v;
  }

  void link(Vertex u, Letter x, Vertex v) {
    std::size_t k = alphabet().size();
    edges_[u * k + x] = v;
    edges_[v * k + alphabet().inverse(x)] = u;
  }

  void build() {
    Alphabet const& A = alphabet();
    std::size_t cap = 2 * radius_ + 2 * presentation().max_relator_length();
    add(Word{});
    std::size_t layer_start = 0;
    for (std::size_t r = 0; r <= radius_; ++r) {
      std::size_t layer_end = words_.size();
      for (Vertex v = layer_start; v < layer_end; ++v) {
        for (Letter x = 0; x < A.size(); ++x) {
          if (edges_[v * A.size() + x] != npos) continue;
          Word c = words_[v];
          if (!c.empty() && A.inverse(c.back()) == x) {
            c.pop_back();
            link(v, x, index_.at(c));
            continue;
          }
          c.push_back(x);
          auto key = oracle_.abelianization().key(c);
          std::optional<Vertex> match;
          std::optional<Vertex> unknown_with;
          if (auto it = by_key_.find(key); it != by_key_.end()) {
            for (Vertex u : it->second) {
              std::size_t du = words_[u].size();
              if (du + 1 < r || du > r + 1) continue;
              Word t = concat(c, word_inverse(A, words_[u]));
              auto res = oracle_.decide(t, cap);
              if (res.answer == Triviality::trivial) {
                match = u;
                break;
              }
              if (res.answer == Triviality::unknown && !unknown_with) unknown_with = u;
            }
          }
          if (match) {
            link(v, x, *match);
            continue;
          }
          if (unknown_with)
            throw incomplete_ball("word problem undecided for pair ('" + A.format(c) + "', '" +
                                  A.format(words_[*unknown_with]) + "')");
          if (r < radius_) link(v, x, add(c));
        }
      }
      layer_start = layer_end;
    }
  }

  WordProblemOracle oracle_;
  std::size_t radius_;
  std::vector<Word> words_;
  std::vector<Vertex> edges_;
  std::map<Word, Vertex> index_;
  std::map<std::vector<std::int64_t>, std::vector<Vertex>> by_key_;
};

inline GroupBall build_ball(Presentation const& P, OracleConfig const& cfg, std::size_t radius) {
  return GroupBall(P, cfg, radius);
}

// |g^-1 h| when that element is in the ball.
inline std::optional<std::size_t> distance(GroupBall const& B, Vertex g, Vertex h) {
  Word t = concat(word_inverse(B.alphabet(), B.word(g)), B.word(h));
  auto v = B.locate(t);
  if (!v) return std::nullopt;
  return B.distance(*v);
}

inline std::vector<Word> geodesic_words(GroupBall const& B, Vertex g) {
  Alphabet const& A = B.alphabet();
  std::vector<Word> out;
  Word suffix;
  // walk backwards along edges that decrease distance
  auto rec = [&](auto&& self, Vertex v) -> void {
    if (v == 0) {
      out.emplace_back(suffix.rbegin(), suffix.rend());
      return;
    }
    for (Letter x = 0; x < A.size(); ++x) {
      auto u = B.neighbor(v, A.inverse(x));
      if (u && B.distance(*u) + 1 == B.distance(v)) {
        suffix.push_back(x);
        self(self, *u);
        suffix.pop_back();
      }
    }
  };
  rec(rec, g);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_geodesic(GroupBall const& B, Word const& w) {
  auto v = B.evaluate(w);
  if (!v) throw out_of_ball("is_geodesic: a prefix of '" + B.alphabet().format(w) + "' leaves the ball");
  return B.distance(*v) == w.size();
}

}  // namespace relhyp
