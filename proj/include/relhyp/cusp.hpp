#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relhyp/cayley.hpp"
#include "relhyp/electric.hpp"
#include "relhyp/error.hpp"
#include "relhyp/graph.hpp"

namespace relhyp {

// Lengths use the natural log: vertical edges are omega * ln(psi).
struct CuspParams {
  double psi = 3.0;
  double omega = 1.0 / 3.0;
  std::size_t rho_max = 0;
  std::size_t depth_cap = 6;

  void validate() const {
    if (!(psi > 1)) throw domain_error("cusp: psi must exceed 1");
    if (!(omega > 0)) throw domain_error("cusp: omega must be positive");
  }
  double vertical_length() const { return omega * std::log(psi); }
  double horizontal_length(std::size_t depth) const { return std::pow(psi, -static_cast<double>(depth)); }
  double horizontal_cell_area(std::size_t depth) const { return horizontal_length(depth); }
  double vertical_cell_area(std::size_t depth) const { return omega * horizontal_length(depth); }
};

struct CuspVertex {
  Vertex base = 0;       // shadow in depth 0
  std::size_t depth = 0;
  std::size_t family = npos;  // npos on the depth-0 layer of a cusped Cayley graph
};

struct CuspComplex {
  CuspParams params;
  WeightedGraph graph;
  std::vector<CuspVertex> vertices;

  std::size_t size() const { return vertices.size(); }
  std::size_t depth(std::size_t v) const { return vertices.at(v).depth; }
};

// Cusp over a ball of H: vertex id = base * (N + 1) + depth.
inline CuspComplex build_cusp_complex(GroupBall const& H, CuspParams const& p) {
  p.validate();
  std::size_t N = p.depth_cap, L = N + 1;
  CuspComplex C;
  C.params = p;
  C.graph = WeightedGraph(H.size() * L);
  for (Vertex b = 0; b < H.size(); ++b)
    for (std::size_t i = 0; i <= N; ++i) C.vertices.push_back({b, i, 0});
  auto const& A = H.alphabet();
  for (Vertex b = 0; b < H.size(); ++b) {
    for (std::size_t i = 0; i < N; ++i) C.graph.add_edge(b * L + i, b * L + i + 1, p.vertical_length());
    for (Letter x = 0; x < A.size(); ++x) {
      if (A.inverse(x) < x) continue;  // one orientation per edge
      auto t = H.neighbor(b, x);
      if (!t || *t == b) continue;
      for (std::size_t i = 0; i <= N; ++i) C.graph.add_edge(b * L + i, *t * L + i, p.horizontal_length(i));
    }
  }
  return C;
}

// Cayley ball of G at depth 0 with a cusp below every parabolic coset.
// Vertex ids: |B| + (f |B| + g) N + (d - 1) for depth d >= 1.
inline CuspComplex build_cusped_cayley(GroupBall const& G, RelativePresentation const& rp, CuspParams const& p) {
  p.validate();
  std::size_t n = G.size(), N = p.depth_cap, F = rp.families().size();
  CuspComplex C;
  C.params = p;
  C.graph = WeightedGraph(n + F * n * N);
  for (Vertex g = 0; g < n; ++g) C.vertices.push_back({g, 0, npos});
  for (std::size_t f = 0; f < F; ++f)
    for (Vertex g = 0; g < n; ++g)
      for (std::size_t d = 1; d <= N; ++d) C.vertices.push_back({g, d, f});
  auto id = [&](std::size_t f, Vertex g, std::size_t d) { return d == 0 ? g : n + (f * n + g) * N + (d - 1); };
  auto const& A = G.alphabet();
  for (Vertex g = 0; g < n; ++g)
    for (Letter x = 0; x < A.size(); ++x) {
      if (A.inverse(x) < x) continue;
      auto t = G.neighbor(g, x);
      if (!t || *t == g) continue;
      C.graph.add_edge(g, *t, 1.0);
      auto f = rp.family_of(x);
      if (!f) continue;
      for (std::size_t d = 1; d <= N; ++d) C.graph.add_edge(id(*f, g, d), id(*f, *t, d), p.horizontal_length(d));
    }
  for (std::size_t f = 0; f < F; ++f)
    for (Vertex g = 0; g < n; ++g)
      for (std::size_t d = 0; d < N; ++d) C.graph.add_edge(id(f, g, d), id(f, g, d + 1), p.vertical_length());
  return C;
}

inline double path_length(CuspComplex const& C, std::vector<std::size_t> const& path) {
  return C.graph.path_length(path);
}

inline double dijkstra_distance(CuspComplex const& C, std::size_t u, std::size_t v) { return C.graph.distance(u, v); }

inline double optimal_depth(double L, CuspParams const& p) {
  if (!(L > 0)) throw domain_error("optimal_depth: shadow length must be positive");
  return std::log(L / (2 * p.omega)) / std::log(p.psi);
}

struct ClosedForm {
  double length = 0;
  std::size_t depth = 0;
};

inline double closed_form_at(double L, std::size_t i, std::size_t k, std::size_t D, CuspParams const& p) {
  return p.vertical_length() * static_cast<double>(2 * D - i - k) + p.horizontal_length(D) * L;
}

// Minimizes over integer D in [max(i,k), N], scanning only the clamped neighbours of the optimum.
inline ClosedForm geodesic_length_closed_form(double L, std::size_t i, std::size_t k, CuspParams const& p) {
  p.validate();
  std::size_t N = p.depth_cap, lo = std::max(i, k);
  if (i > N || k > N) throw range_error("closed form: endpoint depth beyond the depth cap");
  if (L < 0) throw range_error("closed form: negative shadow length");
  std::vector<std::size_t> cand{lo, N};
  if (L > 0) {
    double d = optimal_depth(L, p);
    for (double c : {std::floor(d), std::ceil(d)}) {
      double cl = std::clamp(c, static_cast<double>(lo), static_cast<double>(N));
      cand.push_back(static_cast<std::size_t>(cl));
    }
  }
  ClosedForm best{infinity, lo};
  std::sort(cand.begin(), cand.end());
  for (std::size_t D : cand) {
    double len = closed_form_at(L, i, k, D, p);
    if (len < best.length) best = {len, D};
  }
  return best;
}

// Cross-check: every admissible D.
inline ClosedForm geodesic_length_full_scan(double L, std::size_t i, std::size_t k, CuspParams const& p) {
  ClosedForm best{infinity, 0};
  for (std::size_t D = std::max(i, k); D <= p.depth_cap; ++D) {
    double len = closed_form_at(L, i, k, D, p);
    if (len < best.length) best = {len, D};
  }
  return best;
}

enum class Step { descending, level, ascending };

struct DepthPath {
  std::vector<std::size_t> vertices;
  std::vector<Step> steps;
};

inline DepthPath classify(CuspComplex const& C, std::vector<std::size_t> const& path) {
  DepthPath out{path, {}};
  for (std::size_t t = 1; t < path.size(); ++t) {
    auto a = C.depth(path[t - 1]), b = C.depth(path[t]);
    if (b == a + 1)
      out.steps.push_back(Step::descending);
    else if (a == b + 1)
      out.steps.push_back(Step::ascending);
    else if (a == b)
      out.steps.push_back(Step::level);
    else
      throw path_error("classify: depth jumps by more than one");
  }
  return out;
}

struct Decomposition {
  std::size_t descending = 0, level = 0, ascending = 0;  // step counts
  bool operator==(Decomposition const&) const = default;
};

// descending* level* ascending*, or nullopt.
inline std::optional<Decomposition> decompose_geodesic(std::vector<Step> const& steps) {
  Decomposition d;
  std::size_t t = 0;
  while (t < steps.size() && steps[t] == Step::descending) ++t, ++d.descending;
  while (t < steps.size() && steps[t] == Step::level) ++t, ++d.level;
  while (t < steps.size() && steps[t] == Step::ascending) ++t, ++d.ascending;
  if (t != steps.size()) return std::nullopt;
  return d;
}

inline double level_bound(CuspParams const& p) { return 2 * p.omega * p.psi; }

inline double delta_constant(CuspParams const& p) {
  return 4 * p.omega * p.psi + (std::log(2.0) / std::log(p.psi) + 2) * p.vertical_length();
}

// Length of the level part of a decomposed path.
inline double level_length(CuspComplex const& C, DepthPath const& path) {
  double s = 0;
  for (std::size_t t = 0; t < path.steps.size(); ++t)
    if (path.steps[t] == Step::level) s += C.graph.edge_length(path.vertices[t], path.vertices[t + 1]);
  return s;
}

// Gamma_n: drop every vertex deeper than n; ids are kept.
inline CuspComplex clip(CuspComplex const& C, std::size_t n) {
  CuspComplex out = C;
  for (std::size_t v = 0; v < C.size(); ++v)
    if (C.depth(v) > n) out.graph.remove_vertex(v);
  return out;
}

// Replaces each maximal depth-n stretch of beta by a geodesic of the full complex.
inline std::vector<std::size_t> deepen_replace(CuspComplex const& full, std::vector<std::size_t> const& beta,
                                               std::size_t n) {
  for (std::size_t t = 0; t < beta.size(); ++t) {
    if (beta[t] >= full.size() || full.depth(beta[t]) > n) throw domain_error("deepen_replace: path leaves Gamma_n");
    if (t > 0 && full.graph.edge_length(beta[t - 1], beta[t]) == infinity)
      throw domain_error("deepen_replace: path is not connected");
  }
  std::vector<std::size_t> out;
  std::size_t t = 0;
  while (t < beta.size()) {
    if (full.depth(beta[t]) != n) {
      out.push_back(beta[t++]);
      continue;
    }
    std::size_t s = t;
    while (t + 1 < beta.size() && full.depth(beta[t + 1]) == n) ++t;
    auto g = full.graph.shortest_path(beta[s], beta[t]);
    out.insert(out.end(), g.begin(), g.end());
    ++t;
  }
  return out;
}

// Symmetric Hausdorff distance between vertex sets of two paths.
inline double path_hausdorff(CuspComplex const& C, std::vector<std::size_t> const& a, std::vector<std::size_t> const& b) {
  auto one_sided = [&](std::vector<std::size_t> const& x, std::vector<std::size_t> const& y) {
    double w = 0;
    for (std::size_t p : x) {
      auto d = C.graph.dijkstra(p);
      double best = infinity;
      for (std::size_t q : y) best = std::min(best, d[q]);
      w = std::max(w, best);
    }
    return w;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

struct Pushdown {
  double delta = 0;
  bool valid = false;
};

inline bool pushdown_valid(CuspParams const& p) {
  double ro = static_cast<double>(p.rho_max) * p.omega;
  return ro < 1 && p.psi > 1 / (1 - ro);
}

inline Pushdown pushdown_delta(std::size_t depth, CuspParams const& p) {
  if (depth < 1) throw domain_error("pushdown_delta: depth must be at least 1");
  double rho = static_cast<double>(p.rho_max);
  return {(p.psi - 1 - rho * p.omega * p.psi) * p.horizontal_length(depth), pushdown_valid(p)};
}

// Sum of pushdown_delta over depths 1, 2, ...
inline double pushdown_total(CuspParams const& p) {
  return (p.psi - 1 - static_cast<double>(p.rho_max) * p.omega * p.psi) / (p.psi - 1);
}

}  // namespace relhyp
