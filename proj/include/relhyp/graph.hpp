#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <random>
#include <vector>

#include "relhyp/error.hpp"
#include "relhyp/parallel.hpp"

namespace relhyp {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

struct WeightedEdge {
  std::size_t to;
  double length;
};

// Undirected weighted graph; removed vertices keep their ids.
class WeightedGraph {
 public:
  explicit WeightedGraph(std::size_t n = 0) : adj_(n), alive_(n, 1) {}

  std::size_t size() const { return adj_.size(); }
  bool alive(std::size_t v) const { return alive_.at(v); }
  std::size_t alive_count() const { return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), 1)); }
  std::vector<WeightedEdge> const& edges(std::size_t v) const { return adj_.at(v); }

  std::size_t add_vertex() {
    adj_.emplace_back();
    alive_.push_back(1);
    return adj_.size() - 1;
  }
  void add_edge(std::size_t u, std::size_t v, double len) {
    if (u >= size() || v >= size()) throw range_error("graph: vertex out of range");
    if (!(len > 0)) throw domain_error("graph: edge lengths must be positive");
    if (u == v) return;
    adj_[u].push_back({v, len});
    adj_[v].push_back({u, len});
  }
  void remove_vertex(std::size_t v) {
    alive_.at(v) = 0;
    for (auto& e : adj_[v]) {
      auto& a = adj_[e.to];
      a.erase(std::remove_if(a.begin(), a.end(), [&](WeightedEdge const& f) { return f.to == v; }), a.end());
    }
    adj_[v].clear();
  }

  // Shortest edge between u and v, if adjacent.
  double edge_length(std::size_t u, std::size_t v) const {
    double best = infinity;
    for (auto const& e : adj_.at(u))
      if (e.to == v) best = std::min(best, e.length);
    return best;
  }

  std::vector<double> dijkstra(std::size_t s) const {
    if (s >= size() || !alive_[s]) throw range_error("graph: source out of range");
    std::vector<double> d(size(), infinity);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[s] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
      auto [c, v] = pq.top();
      pq.pop();
      if (c > d[v]) continue;
      for (auto const& e : adj_[v])
        if (c + e.length < d[e.to]) {
          d[e.to] = c + e.length;
          pq.push({d[e.to], e.to});
        }
    }
    return d;
  }

  double distance(std::size_t u, std::size_t v) const {
    double d = dijkstra(u).at(v);
    if (d == infinity) throw path_error("graph: vertices are not connected");
    return d;
  }

  // Shortest path u -> v; among ties the lexicographically least vertex sequence.
  std::vector<std::size_t> shortest_path(std::size_t u, std::size_t v, std::vector<double> const& from_v,
                                         double eps = 1e-9) const {
    if (from_v.at(u) == infinity) throw path_error("graph: vertices are not connected");
    std::vector<std::size_t> p{u};
    while (p.back() != v) {
      std::size_t cur = p.back(), best = static_cast<std::size_t>(-1);
      for (auto const& e : adj_[cur])
        if (std::abs(e.length + from_v[e.to] - from_v[cur]) <= eps * std::max(1.0, from_v[cur]) &&
            from_v[e.to] < from_v[cur])
          best = std::min(best, e.to);
      if (best == static_cast<std::size_t>(-1)) throw error("graph: shortest path reconstruction failed");
      p.push_back(best);
    }
    return p;
  }
  std::vector<std::size_t> shortest_path(std::size_t u, std::size_t v) const { return shortest_path(u, v, dijkstra(v)); }

  double path_length(std::vector<std::size_t> const& p) const {
    double s = 0;
    for (std::size_t i = 1; i < p.size(); ++i) {
      double l = edge_length(p[i - 1], p[i]);
      if (l == infinity) throw path_error("graph: consecutive path vertices are not adjacent");
      s += l;
    }
    return s;
  }

  // Row-major n x n matrix of distances (infinity for dead or unreachable pairs).
  std::vector<double> all_pairs(std::size_t threads = 1) const {
    std::size_t n = size();
    std::vector<double> D(n * n, infinity);
    parallel_for(n, threads, [&](std::size_t s) {
      if (!alive_[s]) return;
      auto d = dijkstra(s);
      std::copy(d.begin(), d.end(), D.begin() + static_cast<std::ptrdiff_t>(s * n));
    });
    return D;
  }

 private:
  std::vector<std::vector<WeightedEdge>> adj_;
  std::vector<char> alive_;
};

struct ThinnessReport {
  double delta = 0;  // largest one-sided vertex distance from a side to the other two
  std::size_t triples = 0;
  bool exhaustive = false;
  std::size_t worst[3] = {0, 0, 0};
};

// Thin-triangle measurement over vertex triples. Exhaustive when samples >= n^3.
inline ThinnessReport measure_thinness(WeightedGraph const& G, std::size_t samples, std::uint64_t seed,
                                       std::size_t threads = 1) {
  std::vector<std::size_t> verts;
  for (std::size_t v = 0; v < G.size(); ++v)
    if (G.alive(v)) verts.push_back(v);
  std::size_t n = verts.size(), N = G.size();
  if (n == 0) return {};
  auto D = G.all_pairs(threads);
  for (std::size_t a : verts)
    for (std::size_t b : verts)
      if (D[a * N + b] == infinity) throw path_error("measure_thinness: graph is not connected");

  std::vector<std::array<std::size_t, 3>> triples;
  ThinnessReport rep;
  if (static_cast<double>(samples) >= static_cast<double>(n) * n * n) {
    rep.exhaustive = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        for (std::size_t k = j; k < n; ++k) triples.push_back({verts[i], verts[j], verts[k]});
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) triples.push_back({verts[rng() % n], verts[rng() % n], verts[rng() % n]});
  }
  rep.triples = triples.size();

  auto path = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    std::vector<double> from_b(D.begin() + static_cast<std::ptrdiff_t>(b * N),
                               D.begin() + static_cast<std::ptrdiff_t>((b + 1) * N));
    return G.shortest_path(a, b, from_b);
  };
  std::vector<double> worst(triples.size(), 0);
  parallel_for(triples.size(), threads, [&](std::size_t t) {
    auto [a, b, c] = triples[t];
    std::vector<std::size_t> side[3] = {path(a, b), path(b, c), path(c, a)};
    double w = 0;
    for (int s = 0; s < 3; ++s)
      for (std::size_t p : side[s]) {
        double best = infinity;
        for (int o = 1; o <= 2; ++o)
          for (std::size_t q : side[(s + o) % 3]) best = std::min(best, D[p * N + q]);
        w = std::max(w, best);
      }
    worst[t] = w;
  });
  for (std::size_t t = 0; t < triples.size(); ++t)
    if (worst[t] > rep.delta) {
      rep.delta = worst[t];
      std::copy(triples[t].begin(), triples[t].end(), rep.worst);
    }
  return rep;
}

}  // namespace relhyp
