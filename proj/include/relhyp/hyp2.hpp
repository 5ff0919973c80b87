#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "relhyp/error.hpp"

namespace relhyp::hyp2 {

struct HPoint {
  double x = 0;
  double y = 1;
};

inline HPoint point(double x, double y) {
  if (!(y > 1e-12)) throw domain_error("hyp2: point must lie in the upper half-plane");
  return {x, y};
}

inline double h_distance(HPoint p, HPoint q) {
  double dx = p.x - q.x, dy = p.y - q.y;
  return std::acosh(1 + (dx * dx + dy * dy) / (2 * p.y * q.y));
}

// Normalized to vanish on the horosphere y = 1.
inline double buseman_infinity(HPoint p) { return -std::log(p.y); }

// Isometry z -> -1/(z - xi) sending the boundary point xi to infinity.
inline HPoint send_to_infinity(HPoint p, double xi) {
  std::complex<double> z(p.x - xi, p.y);
  auto w = -1.0 / z;
  return {w.real(), w.imag()};
}

inline double buseman(HPoint p, double xi) { return buseman_infinity(send_to_infinity(p, xi)); }

// Minimum Buseman value (highest point) along the geodesic arc from p to q.
inline double geodesic_apex(HPoint p, HPoint q) {
  if (std::abs(p.x - q.x) < 1e-15) return std::min(buseman_infinity(p), buseman_infinity(q));
  // circle centered at (c, 0) through both points
  double c = (q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y) / (2 * (q.x - p.x));
  double R = std::hypot(p.x - c, p.y);
  double lo = std::min(p.x, q.x), hi = std::max(p.x, q.x);
  double top = (c >= lo && c <= hi) ? R : std::max(p.y, q.y);
  return -std::log(top);
}

inline double ideal_threshold(double C) { return 2 * C + std::log(16.0); }

// Buseman value at the arc midpoint of two points on y = 1 at distance l.
inline double midpoint_buseman(double l) {
  double a = std::sinh(l / 2);
  return -std::log(std::hypot(a, 1.0));
}

inline bool ideal_midpoint_check(double l, double C) {
  if (!(l > 0) || !(C > 0)) throw range_error("ideal_midpoint_check: l and C must be positive");
  return l < ideal_threshold(C) || midpoint_buseman(l) <= -C;
}

struct Gap {
  double t = 0;
  bool ok = false;
};

inline Gap right_triangle_gap(double u, double theta) {
  if (!(u > 1) || !(theta > 0) || !(theta <= std::numbers::pi / 2)) throw range_error("right_triangle_gap: need u > 1, 0 < theta <= pi/2");
  double t = std::asinh(std::sinh(u) / std::sin(theta));
  return {t, t - u >= std::log(1 / (2 * std::sin(theta))) - 1e-9};
}

struct Isosceles {
  double theta = 0;
  bool decay_ok = false;
};

inline Isosceles ideal_isosceles_angle(double l) {
  if (!(l > 0)) throw range_error("ideal_isosceles_angle: l must be positive");
  double s2 = 2 / (std::cosh(l) + 1);
  return {std::asin(std::sqrt(s2)), s2 <= 4 * std::exp(-l) + 1e-12};
}

// Horospherical distance at height h between the vertical projections of the
// ideal endpoints of the semicircle (center c, radius r).
inline double tangent_projection_diameter(double h, double c, double r) {
  (void)c;
  if (!(h > 0)) throw domain_error("tangent_projection_diameter: horoball height must be positive");
  if (r == 0) return 0;
  if (std::abs(r - h) > 1e-12 * std::max(1.0, h)) throw domain_error("tangent_projection_diameter: geodesic is not tangent");
  return 2 * r / h;
}

struct SweepReport {
  bool right_triangle = true, ideal_midpoint = true, isosceles = true, projection = true;
  double worst_gap_margin = INFINITY;       // min of (t - u) - ln(1/(2 sin theta))
  double worst_midpoint_margin = INFINITY;  // min of -C - m over the guarantee region
  double worst_projection_error = 0;
  std::size_t cases = 0;
  bool all() const { return right_triangle && ideal_midpoint && isosceles && projection; }
};

inline SweepReport run_sweeps() {
  SweepReport rep;
  for (int i = 1; i <= 90; ++i)
    for (int j = 1; j < 60; ++j) {
      double u = 1 + 0.1 * i, th = (std::numbers::pi / 2) * j / 60;
      auto g = right_triangle_gap(u, th);
      rep.right_triangle &= g.ok;
      rep.worst_gap_margin = std::min(rep.worst_gap_margin, g.t - u - std::log(1 / (2 * std::sin(th))));
      ++rep.cases;
    }
  for (double C : {0.5, 1.0, 2.0})
    for (int s = 0; s <= 100; ++s) {
      double l = ideal_threshold(C) + 0.1 * s;
      rep.ideal_midpoint &= ideal_midpoint_check(l, C);
      rep.worst_midpoint_margin = std::min(rep.worst_midpoint_margin, -C - midpoint_buseman(l));
      ++rep.cases;
    }
  for (int s = 1; s <= 200; ++s) {
    rep.isosceles &= ideal_isosceles_angle(0.1 * s).decay_ok;
    ++rep.cases;
  }
  for (double h : {0.25, 1.0, 5.0, 100.0}) {
    double e = std::abs(tangent_projection_diameter(h, 3.0, h) - 2);
    rep.worst_projection_error = std::max(rep.worst_projection_error, e);
    rep.projection &= e <= 1e-6;
    ++rep.cases;
  }
  return rep;
}

}  // namespace relhyp::hyp2
