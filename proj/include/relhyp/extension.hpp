#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "relhyp/cayley.hpp"
#include "relhyp/electric.hpp"
#include "relhyp/error.hpp"
#include "relhyp/fftp.hpp"
#include "relhyp/homology.hpp"
#include "relhyp/parallel.hpp"

namespace relhyp {

// gh for every in-ball pair; npos when the product leaves the ball.
struct ProductTable {
  std::size_t n = 0;
  std::vector<Vertex> prod;
  Vertex operator()(Vertex g, Vertex h) const { return prod[g * n + h]; }
};

inline ProductTable product_table(GroupBall const& B, std::size_t threads = 1) {
  ProductTable P{B.size(), std::vector<Vertex>(B.size() * B.size(), npos)};
  parallel_for(B.size(), threads, [&](std::size_t g) {
    for (Vertex h = 0; h < B.size(); ++h)
      if (auto v = B.multiply(g, h)) P.prod[g * P.n + h] = *v;
  });
  return P;
}

// Integer 2-cochain on a ball, stored where gh stays in the ball.
struct Cocycle {
  std::size_t n = 0;
  std::vector<std::optional<std::int64_t>> values;

  Cocycle() = default;
  explicit Cocycle(std::size_t size) : n(size), values(size * size) {}

  std::optional<std::int64_t> at(Vertex g, Vertex h) const { return values.at(g * n + h); }
  std::int64_t value(Vertex g, Vertex h) const {
    auto v = at(g, h);
    if (!v) throw out_of_ball("cocycle: entry (" + std::to_string(g) + ", " + std::to_string(h) + ") undefined");
    return *v;
  }
  void set(Vertex g, Vertex h, std::int64_t v) { values.at(g * n + h) = v; }
  std::size_t defined() const {
    std::size_t c = 0;
    for (auto const& v : values) c += v.has_value();
    return c;
  }
  bool is_zero() const {
    for (auto const& v : values)
      if (v && *v != 0) return false;
    return true;
  }
  std::int64_t max_abs() const {
    std::int64_t m = 0;
    for (auto const& v : values)
      if (v) m = std::max(m, std::abs(*v));
    return m;
  }
};

inline Cocycle make_cocycle(ProductTable const& P, std::function<std::int64_t(Vertex, Vertex)> const& f) {
  Cocycle s(P.n);
  for (Vertex g = 0; g < P.n; ++g)
    for (Vertex h = 0; h < P.n; ++h)
      if (P(g, h) != npos) s.set(g, h, f(g, h));
  return s;
}

inline Cocycle zero_cocycle(ProductTable const& P) {
  return make_cocycle(P, [](Vertex, Vertex) { return std::int64_t{0}; });
}

// sigma((x1,y1),(x2,y2)) = x1 y2 on a two-generator ball; coordinates are exponent sums.
inline Cocycle heisenberg_cocycle(GroupBall const& B, ProductTable const& P) {
  Alphabet const& A = B.alphabet();
  if (A.size() != 4) throw domain_error("heisenberg_cocycle: needs exactly two generators");
  std::vector<std::array<std::int64_t, 2>> xy(B.size());
  for (Vertex v = 0; v < B.size(); ++v)
    for (Letter x : B.word(v)) {
      Letter base = std::min(x, A.inverse(x));
      xy[v][base == 0 ? 0 : 1] += x == base ? 1 : -1;
    }
  return make_cocycle(P, [&](Vertex g, Vertex h) { return xy[g][0] * xy[h][1]; });
}

struct CocycleCheck {
  bool ok = true;
  std::optional<std::array<Vertex, 3>> witness;  // lexicographically first failing triple
  std::size_t triples = 0;
};

inline CocycleCheck cocycle_check(Cocycle const& s, ProductTable const& P, std::size_t threads = 1) {
  std::size_t n = P.n;
  std::vector<std::size_t> counts(n, 0);
  std::vector<std::optional<std::array<Vertex, 3>>> first(n);
  parallel_for(n, threads, [&](std::size_t g) {
    for (Vertex h = 0; h < n; ++h) {
      Vertex gh = P(g, h);
      if (gh == npos) continue;
      for (Vertex k = 0; k < n; ++k) {
        Vertex hk = P(h, k);
        if (hk == npos || P(gh, k) == npos) continue;
        auto a = s.at(g, h), b = s.at(gh, k), c = s.at(g, hk), d = s.at(h, k);
        if (!a || !b || !c || !d) continue;
        ++counts[g];
        if (!first[g] && *a + *b != *c + *d) first[g] = std::array<Vertex, 3>{g, h, k};
      }
    }
  });
  CocycleCheck r;
  for (std::size_t g = 0; g < n; ++g) {
    r.triples += counts[g];
    if (!r.witness && first[g]) r.witness = first[g];
  }
  r.ok = !r.witness;
  return r;
}

struct SectionCocycle {
  Cocycle sigma;
  double coverage = 0;  // defined pairs / all pairs
};

// sigma'(g,h) = rho(g) + rho(h) + base(g,h) - rho(gh): the cocycle of the section
// g -> (g, rho(g)) in the model twisted by `base` (zero when omitted).
inline SectionCocycle section_to_cocycle(std::vector<std::int64_t> const& rho, ProductTable const& P,
                                         Cocycle const* base = nullptr) {
  if (rho.size() != P.n) throw domain_error("section_to_cocycle: one value per ball vertex expected");
  if (rho[0] != 0) throw domain_error("section_to_cocycle: rho(1) must be 0");
  SectionCocycle out{Cocycle(P.n), 0};
  for (Vertex g = 0; g < P.n; ++g)
    for (Vertex h = 0; h < P.n; ++h) {
      Vertex gh = P(g, h);
      if (gh == npos) continue;
      std::int64_t b = 0;
      if (base) {
        auto v = base->at(g, h);
        if (!v) continue;
        b = *v;
      }
      out.sigma.set(g, h, rho[g] + rho[h] + b - rho[gh]);
    }
  out.coverage = P.n ? static_cast<double>(out.sigma.defined()) / static_cast<double>(P.n * P.n) : 0;
  return out;
}

struct CoboundaryResult {
  bool coboundary = false;
  std::vector<Rat> f;  // sigma(g,h) = f(g) + f(h) - f(gh) when coboundary
  bool integral = false;
};

// f is pinned along a BFS tree by one unknown per letter; every in-ball equation is then
// a linear condition on those unknowns.
inline CoboundaryResult is_coboundary(Cocycle const& s, GroupBall const& B, ProductTable const& P) {
  std::size_t n = P.n, k = B.alphabet().size();
  auto s11 = s.at(0, 0);
  if (!s11) throw domain_error("is_coboundary: sigma(1,1) undefined");
  std::vector<std::optional<std::vector<Rat>>> expr(n);
  std::vector<Rat> e0(k + 1, Rat(0));
  e0[k] = *s11;
  expr[0] = e0;
  std::queue<Vertex> q;
  q.push(0);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Letter x = 0; x < k; ++x) {
      auto u = B.neighbor(v, x);
      auto gx = B.neighbor(0, x);
      if (!u || !gx || expr[*u]) continue;
      auto sv = s.at(v, *gx);
      if (!sv) continue;
      auto e = *expr[v];
      e[x] += 1;
      e[k] -= *sv;
      expr[*u] = e;
      q.push(*u);
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (!expr[v]) throw domain_error("is_coboundary: ball is not connected through defined entries");
  Matrix<Rat> rows;
  auto add = [&](std::vector<Rat> e) {
    for (auto const& r : rows) {
      std::size_t p = 0;
      while (r[p] == 0) ++p;
      if (e[p] != 0) {
        Rat c = e[p];
        for (std::size_t j = 0; j <= k; ++j) e[j] -= c * r[j];
      }
    }
    std::size_t p = 0;
    while (p < k && e[p] == 0) ++p;
    if (p == k) return e[k] == 0;
    Rat inv = 1 / e[p];
    for (auto& x : e) x *= inv;
    for (auto& r : rows)
      if (r[p] != 0) {
        Rat c = r[p];
        for (std::size_t j = 0; j <= k; ++j) r[j] -= c * e[j];
      }
    rows.push_back(e);
    return true;
  };
  CoboundaryResult res;
  for (Letter x = 0; x < k; ++x) {
    auto gx = B.neighbor(0, x);
    if (!gx) continue;
    auto e = *expr[*gx];  // f(x) equals its own unknown
    e[x] -= 1;
    if (!add(e)) return res;
  }
  for (Vertex g = 0; g < n; ++g)
    for (Vertex h = 0; h < n; ++h) {
      Vertex gh = P(g, h);
      auto v = s.at(g, h);
      if (gh == npos || !v) continue;
      std::vector<Rat> e(k + 1);
      for (std::size_t j = 0; j <= k; ++j) e[j] = (*expr[g])[j] + (*expr[h])[j] - (*expr[gh])[j];
      e[k] -= *v;
      if (!add(e)) return res;
    }
  // equations read sum c_j u_j + const = 0; free unknowns set to zero
  std::vector<Rat> u(k, Rat(0));
  for (auto const& r : rows) {
    std::size_t p = 0;
    while (r[p] == 0) ++p;
    u[p] = -r[k];
  }
  res.coboundary = true;
  res.integral = true;
  for (Vertex v = 0; v < n; ++v) {
    Rat val = (*expr[v])[k];
    for (std::size_t j = 0; j < k; ++j) val += (*expr[v])[j] * u[j];
    res.integral &= denominator(val) == 1;
    res.f.push_back(val);
  }
  return res;
}

struct Spread {
  Letter letter = 0;
  std::int64_t right = 0;  // max |sigma(g, x)|
  std::int64_t left = 0;   // max |sigma(x, g)|
};

struct SectionBoundCheck {
  std::int64_t max_abs = 0;
  std::size_t pairs = 0;
  bool ok = true;
};

struct WeakBoundedness {
  std::vector<Spread> spreads;
  std::int64_t constant = 0;
  std::string verdict = "bounded on ball";
  std::optional<SectionBoundCheck> section_bound;  // section-derived cocycles only
};

inline WeakBoundedness weakly_bounded_report(Cocycle const& s, GroupBall const& B) {
  WeakBoundedness r;
  for (Letter x = 0; x < B.alphabet().size(); ++x) {
    auto gx = B.neighbor(0, x);
    if (!gx) continue;
    Spread sp{x, 0, 0};
    for (Vertex g = 0; g < s.n; ++g) {
      if (auto v = s.at(g, *gx)) sp.right = std::max(sp.right, std::abs(*v));
      if (auto v = s.at(*gx, g)) sp.left = std::max(sp.left, std::abs(*v));
    }
    r.constant = std::max({r.constant, sp.right, sp.left});
    r.spreads.push_back(sp);
  }
  return r;
}

// Constants over nested balls; strictly growing across three or more radii reads as unbounded.
inline std::string spread_trend(std::vector<std::int64_t> const& constants) {
  if (constants.size() < 3) return "bounded on ball";
  for (std::size_t i = 1; i < constants.size(); ++i)
    if (constants[i] <= constants[i - 1]) return "bounded on ball";
  return "unbounded trend";
}

// G x Z with (g,m)(h,n) = (gh, m + n + sigma(g,h)).
struct ExtElement {
  Vertex g = 0;
  std::int64_t m = 0;
  bool operator==(ExtElement const&) const = default;
};

class ExtensionModel {
 public:
  ExtensionModel(GroupBall const& B, ProductTable const& P, Cocycle const& s) : B_(&B), P_(&P), s_(&s) {}

  std::optional<ExtElement> multiply(ExtElement a, ExtElement b) const {
    Vertex gh = (*P_)(a.g, b.g);
    if (gh == npos) return std::nullopt;
    auto v = s_->at(a.g, b.g);
    if (!v) return std::nullopt;
    return ExtElement{gh, a.m + b.m + *v};
  }

  // First in-ball triple where (ab)c != a(bc).
  std::optional<std::array<Vertex, 3>> associativity_failure() const {
    std::size_t n = P_->n;
    for (Vertex g = 0; g < n; ++g)
      for (Vertex h = 0; h < n; ++h)
        for (Vertex k = 0; k < n; ++k) {
          ExtElement a{g, 0}, b{h, 0}, c{k, 0};
          auto ab = multiply(a, b), bc = multiply(b, c);
          if (!ab || !bc) continue;
          auto l = multiply(*ab, c), r = multiply(a, *bc);
          if (!l || !r) continue;
          if (!(*l == *r)) return std::array<Vertex, 3>{g, h, k};
        }
    return std::nullopt;
  }

  // Lift of a letter; inverse letters lift to the inverse of the lifted generator.
  ExtElement lift(Letter x) const {
    Alphabet const& A = B_->alphabet();
    auto gx = B_->neighbor(0, x);
    if (!gx) throw out_of_ball("extension: generator outside the ball");
    if (x <= A.inverse(x)) return {*gx, 0};
    auto inv = B_->neighbor(0, A.inverse(x));
    if (!inv) throw out_of_ball("extension: generator outside the ball");
    return {*gx, -s_->value(*inv, *gx)};
  }

  // Lifted value of w read from the identity; every prefix must stay in the ball.
  ExtElement evaluate(Word const& w) const {
    ExtElement e{0, 0};
    for (Letter x : w) {
      auto n = multiply(e, lift(x));
      if (!n) throw out_of_ball("extension: word leaves the ball");
      e = *n;
    }
    return e;
  }

  bool normalized() const {
    auto v = s_->at(0, 0);
    return v && *v == 0;
  }

  GroupBall const& ball() const { return *B_; }
  Cocycle const& cocycle() const { return *s_; }

 private:
  GroupBall const* B_;
  ProductTable const* P_;
  Cocycle const* s_;
};

// Max lifted value over non-parabolic relators and their inverses.
inline std::int64_t relator_twist(ExtensionModel const& E, RelativePresentation const& rp) {
  Alphabet const& A = rp.base().alphabet();
  std::optional<std::int64_t> T;
  auto const& R = rp.base().relators();
  for (std::size_t r = 0; r < R.size(); ++r) {
    if (rp.is_parabolic_relator(r)) continue;
    for (auto const& w : {R[r], word_inverse(A, R[r])}) {
      auto e = E.evaluate(w);
      if (e.g != 0) throw error("relator_twist: relator does not close up in the ball");
      T = T ? std::max(*T, e.m) : e.m;
    }
  }
  return T.value_or(0);
}

struct MaximizingSection {
  std::vector<std::optional<std::int64_t>> value;  // H*(g)
  std::vector<Word> witness;                       // shortest word attaining H*(g)
  std::int64_t C = 0, T = 0, K = 1;
  std::size_t cap = 0;
  bool precondition_ok = false;  // C > T K
  bool stable = false;           // cap + 2 changes nothing
  std::size_t unstable = 0;      // vertices whose value moved at cap + 2
};

// H*(g) = max over words w with prefixes in the ball, |w| <= cap, w = g of
// (lifted second coordinate of w) - C * electric length of w.
inline MaximizingSection maximizing_section(ExtensionModel const& E, RelativePresentation const& rp, std::int64_t C,
                                            std::size_t cap, std::int64_t K = 1) {
  if (C <= 0) throw domain_error("maximizing_section: C must be positive");
  if (!E.normalized()) throw hypothesis_error("maximizing_section: cocycle must satisfy sigma(1,1) = 0");
  GroupBall const& B = E.ball();
  Alphabet const& A = B.alphabet();
  std::size_t n = B.size(), k = A.size(), L = cap + 2;
  constexpr std::int64_t none = std::numeric_limits<std::int64_t>::min();
  std::vector<ExtElement> lifts;
  for (Letter x = 0; x < k; ++x) lifts.push_back(E.lift(x));

  MaximizingSection out;
  out.C = C;
  out.K = K;
  out.cap = cap;
  out.T = relator_twist(E, rp);
  out.precondition_ok = C > out.T * K;

  std::vector<std::vector<std::int64_t>> best(L + 1, std::vector<std::int64_t>(n, none));
  std::vector<std::vector<std::pair<Vertex, Letter>>> back(L + 1, std::vector<std::pair<Vertex, Letter>>(n));
  best[0][0] = 0;
  for (std::size_t len = 1; len <= L; ++len)
    for (Vertex v = 0; v < n; ++v) {
      if (best[len - 1][v] == none) continue;
      for (Letter x = 0; x < k; ++x) {
        auto u = E.multiply({v, best[len - 1][v]}, lifts[x]);
        if (!u) continue;
        std::int64_t val = u->m - (rp.is_parabolic(x) ? 0 : C);
        if (val > best[len][u->g]) {
          best[len][u->g] = val;
          back[len][u->g] = {v, x};
        }
      }
    }
  auto summarize = [&](std::size_t upto, std::vector<std::int64_t>& val, std::vector<std::size_t>& at) {
    val.assign(n, none);
    at.assign(n, 0);
    for (std::size_t len = 0; len <= upto; ++len)
      for (Vertex v = 0; v < n; ++v)
        if (best[len][v] > val[v]) {
          val[v] = best[len][v];
          at[v] = len;
        }
  };
  std::vector<std::int64_t> v0, v1;
  std::vector<std::size_t> at0, at1;
  summarize(cap, v0, at0);
  summarize(L, v1, at1);
  out.value.resize(n);
  out.witness.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    if (v0[v] != v1[v]) ++out.unstable;
    if (v0[v] == none) continue;
    out.value[v] = v0[v];
    Word w;
    Vertex c = v;
    for (std::size_t len = at0[v]; len > 0; --len) {
      auto [p, x] = back[len][c];
      w.push_back(x);
      c = p;
    }
    out.witness[v] = Word(w.rbegin(), w.rend());
  }
  out.stable = out.unstable == 0;
  return out;
}

struct BacktrackCheck {
  bool ok = true;
  std::optional<std::size_t> first_offender;
};

inline BacktrackCheck maximizing_words_nonbacktracking_check(ElectricBall const& eb, std::vector<Word> const& words) {
  BacktrackCheck r;
  for (std::size_t i = 0; i < words.size(); ++i)
    if (backtracks(eb, words[i])) {
      r.ok = false;
      r.first_offender = i;
      break;
    }
  return r;
}

// |rho(g) x - rho(gx)| and |x rho(g) - rho(xg)| against C for rho(g) = (g, H*(g)),
// on pairs where both competitor words used by the bound fit in the ball and the cap.
inline SectionBoundCheck section_bound_check(ExtensionModel const& E, MaximizingSection const& S) {
  GroupBall const& B = E.ball();
  Alphabet const& A = B.alphabet();
  SectionBoundCheck r;
  auto fits = [&](Vertex start, Word const& w) { return w.size() + 1 <= S.cap && B.walk(start, w).has_value(); };
  for (Letter x = 0; x < A.size(); ++x) {
    auto lx = E.lift(x);
    auto gi = B.neighbor(0, A.inverse(x));
    if (!gi) continue;
    for (Vertex g = 0; g < B.size(); ++g) {
      if (!S.value[g]) continue;
      ExtElement rho{g, *S.value[g]};
      // right
      auto gx = B.neighbor(g, x);
      if (gx && S.value[*gx] && S.witness[g].size() + 1 <= S.cap && S.witness[*gx].size() + 1 <= S.cap) {
        auto prod = E.multiply(rho, lx);
        if (prod) {
          std::int64_t d = prod->m - *S.value[*gx];
          r.max_abs = std::max(r.max_abs, std::abs(d));
          ++r.pairs;
        }
      }
      // left
      auto xg = B.walk(lx.g, S.witness[g]);
      if (xg && S.value[*xg] && S.witness[g].size() + 1 <= S.cap && fits(*gi, S.witness[*xg])) {
        auto prod = E.multiply(lx, rho);
        if (prod) {
          std::int64_t d = prod->m - *S.value[*xg];
          r.max_abs = std::max(r.max_abs, std::abs(d));
          ++r.pairs;
        }
      }
    }
  }
  r.ok = r.max_abs <= S.C;
  return r;
}

// Report for the cocycle of the section g -> (g, H*(g)). The raw spread may reach 2C
// since rho(x) = x - C for non-parabolic x; the bound C is checked on rho(g) x - rho(gx).
inline WeakBoundedness weakly_bounded_report(ExtensionModel const& E, MaximizingSection const& S,
                                             ProductTable const& P) {
  std::vector<std::int64_t> rho(S.value.size(), 0);
  for (std::size_t g = 0; g < rho.size(); ++g) {
    if (!S.value[g]) throw out_of_ball("weakly_bounded_report: section undefined on part of the ball");
    rho[g] = *S.value[g];
  }
  auto derived = section_to_cocycle(rho, P, &E.cocycle());
  auto r = weakly_bounded_report(derived.sigma, E.ball());
  r.section_bound = section_bound_check(E, S);
  return r;
}

// Word height w -> (lifted second coordinate) - C * electric length, for the fftp builder.
inline HeightFunction extension_height(ExtensionModel const& E, RelativePresentation const& rp, std::int64_t C) {
  if (C <= 0) throw domain_error("extension_height: C must be positive");
  if (E.cocycle().is_zero()) {
    auto H = negative_electric_length(rp, C);
    H.name = "extension(0)-" + std::to_string(C) + "*electric-length";
    return H;
  }
  HeightFunction H;
  H.name = "extension-" + std::to_string(C) + "*electric-length";
  H.eval = [&E, rp, C](Word const& w) {
    return E.evaluate(w).m - C * static_cast<std::int64_t>(electric_length(rp, w));
  };
  H.K = C + 2 * E.cocycle().max_abs() + 1;
  return H;
}

}  // namespace relhyp
