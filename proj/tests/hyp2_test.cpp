#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "relhyp/hyp2.hpp"

using namespace relhyp::hyp2;

TEST(Hyp2, Distance) {
  EXPECT_NEAR(h_distance({0, 1}, {0, 2}), 0.6931471805599453, 1e-12);
  EXPECT_EQ(h_distance({3, 2}, {3, 2}), 0.0);
  EXPECT_NEAR(h_distance({0, 1}, {1, 1}), 0.9624236501192069, 1e-12);
  EXPECT_THROW(point(0, 0), relhyp::domain_error);
}

TEST(Hyp2, DistanceIsAMetric) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> X(-5, 5), Y(0.05, 5);
  for (int i = 0; i < 1000; ++i) {
    HPoint a{X(rng), Y(rng)}, b{X(rng), Y(rng)}, c{X(rng), Y(rng)};
    EXPECT_NEAR(h_distance(a, b), h_distance(b, a), 1e-12);
    EXPECT_LE(h_distance(a, c), h_distance(a, b) + h_distance(b, c) + 1e-9);
  }
}

TEST(Hyp2, Buseman) {
  EXPECT_EQ(buseman_infinity({5, 1}), 0.0);
  EXPECT_NEAR(buseman_infinity({0, std::exp(1.0)}), -1.0, 1e-15);
  EXPECT_NEAR(buseman_infinity({0, 0.5}), std::log(2.0), 1e-15);
  // limit definition along the vertical ray, T = 30
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> X(-3, 3), Y(0.1, 3);
  double T = 30;
  for (int i = 0; i < 100; ++i) {
    HPoint p{X(rng), Y(rng)};
    EXPECT_NEAR(buseman_infinity(p), h_distance(p, {0, std::exp(T)}) - T, 1e-9);
  }
}

TEST(Hyp2, NormalizerIsAnIsometry) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> X(-3, 3), Y(0.1, 3);
  for (int i = 0; i < 200; ++i) {
    HPoint a{X(rng), Y(rng)}, b{X(rng), Y(rng)};
    double xi = X(rng);
    EXPECT_NEAR(h_distance(send_to_infinity(a, xi), send_to_infinity(b, xi)), h_distance(a, b), 1e-8);
  }
  // horoballs at xi are Euclidean discs tangent at xi; points near xi are deep
  EXPECT_LT(buseman({0.0, 0.01}, 0.0), buseman({0.0, 1.0}, 0.0));
}

TEST(Hyp2, Apex) {
  EXPECT_NEAR(geodesic_apex({-1, 1}, {1, 1}), -0.3465735902799727, 1e-12);
  EXPECT_EQ(geodesic_apex({0, 1}, {0, 2}), -std::log(2.0));
  double prev = 0;
  for (int a = 1; a <= 10; ++a) {
    double d = geodesic_apex({-double(a), 1}, {double(a), 1});
    EXPECT_LT(d, prev);
    prev = d;
  }
  // never above the endpoints
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> X(-3, 3), Y(0.1, 3);
  for (int i = 0; i < 500; ++i) {
    HPoint p{X(rng), Y(rng)}, q{X(rng), Y(rng)};
    EXPECT_LE(geodesic_apex(p, q), std::min(buseman_infinity(p), buseman_infinity(q)) + 1e-12);
  }
}

TEST(Hyp2, IdealMidpoint) {
  EXPECT_NEAR(ideal_threshold(1), 4.772588722239782, 1e-12);
  EXPECT_TRUE(ideal_midpoint_check(5, 1));
  EXPECT_NEAR(midpoint_buseman(5), -1.8135681679291726, 1e-12);
  EXPECT_TRUE(ideal_midpoint_check(1, 1));
  for (double C : {0.5, 1.0, 2.0})
    for (int s = 0; s <= 100; ++s) EXPECT_TRUE(ideal_midpoint_check(ideal_threshold(C) + 0.1 * s, C));
}

TEST(Hyp2, RightTriangle) {
  auto g = right_triangle_gap(2, std::numbers::pi / 6);
  EXPECT_NEAR(g.t, std::asinh(2 * std::sinh(2.0)), 1e-12);
  EXPECT_NEAR(g.t - 2, 0.6793795880521523, 1e-12);
  EXPECT_TRUE(g.ok);
  auto r = right_triangle_gap(3, std::numbers::pi / 2);
  EXPECT_NEAR(r.t, 3, 1e-12);
  EXPECT_TRUE(r.ok);
  EXPECT_THROW(right_triangle_gap(0.5, 1), relhyp::range_error);
  EXPECT_THROW(right_triangle_gap(2, 0), relhyp::range_error);
}

TEST(Hyp2, Isosceles) {
  auto a = ideal_isosceles_angle(std::log(3.0));
  EXPECT_NEAR(std::pow(std::sin(a.theta), 2), 0.75, 1e-12);
  EXPECT_TRUE(a.decay_ok);
  EXPECT_NEAR(ideal_isosceles_angle(1e-6).theta, std::numbers::pi / 2, 1e-5);
  for (int s = 1; s <= 200; ++s) EXPECT_TRUE(ideal_isosceles_angle(0.1 * s).decay_ok);
}

TEST(Hyp2, TangentProjection) {
  EXPECT_NEAR(tangent_projection_diameter(1, 0, 1), 2, 1e-12);
  EXPECT_NEAR(tangent_projection_diameter(5, 7, 5), 2, 1e-12);
  EXPECT_EQ(tangent_projection_diameter(5, 7, 0), 0);
  EXPECT_THROW(tangent_projection_diameter(5, 0, 4), relhyp::domain_error);
}

TEST(Hyp2, Sweeps) {
  auto rep = run_sweeps();
  EXPECT_TRUE(rep.all());
  EXPECT_GE(rep.worst_gap_margin, -1e-9);
  EXPECT_GE(rep.worst_midpoint_margin, 0);
}
