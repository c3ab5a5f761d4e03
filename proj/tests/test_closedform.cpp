#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

#include "specpoly/closedform.hpp"

using namespace specpoly;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kPi2 = kPi * kPi;
}

TEST_CASE("unit square spectra under the three axis patterns") {
  const auto dd = rectangle_spectrum(1, 1, AxisPattern::DD, AxisPattern::DD, 5);
  const double dd_expect[] = {2, 5, 5, 8, 10};
  for (int i = 0; i < 5; ++i)
    CHECK(dd[i] == doctest::Approx(dd_expect[i] * kPi2).epsilon(1e-13));

  const auto dn = rectangle_spectrum(1, 1, AxisPattern::DD, AxisPattern::NN, 5);
  const double dn_expect[] = {1, 2, 4, 5, 5};
  for (int i = 0; i < 5; ++i)
    CHECK(dn[i] == doctest::Approx(dn_expect[i] * kPi2).epsilon(1e-13));

  const auto dh = rectangle_spectrum(1, 1, AxisPattern::DD, AxisPattern::DN, 5);
  const double dh_expect[] = {1.25, 3.25, 4.25, 6.25, 7.25};
  for (int i = 0; i < 5; ++i)
    CHECK(dh[i] == doctest::Approx(dh_expect[i] * kPi2).epsilon(1e-13));
}

TEST_CASE("non-square rectangles") {
  const auto two = rectangle_spectrum(2, 1, AxisPattern::DD, AxisPattern::DD, 5);
  const double two_expect[] = {1.25, 2, 3.25, 4.25, 5};
  for (int i = 0; i < 5; ++i)
    CHECK(two[i] == doctest::Approx(two_expect[i] * kPi2).epsilon(1e-13));

  const auto three = rectangle_spectrum(3, 1, AxisPattern::DD, AxisPattern::DD, 5);
  const double three_expect[] = {10.0 / 9, 13.0 / 9, 2, 25.0 / 9, 34.0 / 9};
  for (int i = 0; i < 5; ++i)
    CHECK(three[i] == doctest::Approx(three_expect[i] * kPi2).epsilon(1e-13));

  const auto legs = rectangle_spectrum(2, 1, AxisPattern::DD, AxisPattern::NN, 3);
  CHECK(legs[0] == doctest::Approx(kPi2 / 4).epsilon(1e-13));
  CHECK(legs[1] == doctest::Approx(kPi2).epsilon(1e-13));
  CHECK(legs[2] == doctest::Approx(1.25 * kPi2).epsilon(1e-13));
}

TEST_CASE("axis swap symmetry and ordering") {
  const auto a = rectangle_spectrum(1.7, 0.6, AxisPattern::DN, AxisPattern::NN, 40);
  const auto b = rectangle_spectrum(0.6, 1.7, AxisPattern::NN, AxisPattern::DN, 40);
  for (int i = 0; i < 40; ++i) {
    CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
    if (i) CHECK(a[i] >= a[i - 1]);
  }
}

TEST_CASE("eigenvalue counting matches brute force") {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> side(0.3, 3.0), lam(1.0, 400.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = side(rng), b = side(rng), lambda = lam(rng);
    std::int64_t brute = 0;
    for (int i = 1; (kPi * i / a) * (kPi * i / a) <= lambda; ++i)
      for (int j = 0;
           (kPi * i / a) * (kPi * i / a) + (kPi * j / b) * (kPi * j / b) <= lambda;
           ++j)
        ++brute;
    CHECK(rectangle_count_below(a, b, lambda) == brute);
  }
  CHECK(rectangle_count_below(1.0, 1.0, -5.0) == 0);
  CHECK(rectangle_count_below(1.0, 1.0, 0.0) == 0);
}

TEST_CASE("cylinder first nonzero mode") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dim(0.2, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double l = dim(rng), h = dim(rng);
    // brute force over periodic x modes and Neumann y modes
    double best = std::numeric_limits<double>::max();
    for (int m = 0; m <= 8; ++m)
      for (int n = 0; n <= 8; ++n) {
        if (m == 0 && n == 0) continue;
        const double v = std::pow(2 * kPi * m / l, 2) + std::pow(kPi * n / h, 2);
        best = std::min(best, v);
      }
    CHECK(cylinder_mu2(l, h) == doctest::Approx(best).epsilon(1e-13));
  }
}

TEST_CASE("counting function and its inverse") {
  // exact square law up to the first threshold
  for (int i = 0; i <= 200; ++i) {
    const double x = i / 200.0;
    CHECK(counting_inverse_m(x) == x * x);  // bitwise: the closed-form branch
  }
  // inverse property across the bisection branch
  for (int i = 1; i <= 200; ++i) {
    const double y = 50.0 * i / 200.0;
    const double x = counting_x(y);
    CHECK(counting_inverse_m(x) == doctest::Approx(y).epsilon(1e-10));
  }
  CHECK(counting_inverse_m(2.0) == doctest::Approx(1.5625).epsilon(1e-10));
  CHECK(counting_x(25.0 / 16.0) == doctest::Approx(2.0).epsilon(1e-13));
  // monotone
  double prev = -1;
  for (int i = 0; i <= 100; ++i) {
    const double v = counting_inverse_m(0.08 * i);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(counting_inverse_m(-0.1), std::invalid_argument);
}

TEST_CASE("eigenvalue lower bound from the counting function") {
  // below the threshold h*k <= m the bound is exactly pi^2 k^2 / m^2
  CHECK(polya_lower_bound(1, 0.5, 2.0) == kPi2 / 4.0);
  CHECK(polya_lower_bound(2, 1.0, 2.0) == kPi2);
  CHECK(polya_lower_bound(3, 1.0, 3.0) == kPi2);
  // above it the bound switches to the counting-function inverse, which is
  // strictly weaker than the naive square law (M(x) < x^2 for x > 1)
  const double above = polya_lower_bound(3, 1.0, 1.0);
  CHECK(above == doctest::Approx(kPi2 * counting_inverse_m(3.0)).epsilon(1e-12));
  CHECK(above == doctest::Approx(kPi2 * 25.0 / 9.0).epsilon(1e-10));
  CHECK(above < 9.0 * kPi2);
  CHECK(counting_inverse_m(1.5) < 1.5 * 1.5);
  CHECK_THROWS_AS(polya_lower_bound(0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("triangle lower-bound comparison") {
  // legs 1: l^2 = 2 = 4*area, the two bounds coincide
  const TriangleBounds tie =
      triangle_bounds(TriangleParams::from_sides_angle(1.0, 1.0, kPi / 2));
  CHECK(tie.sharper == TriangleBounds::Sharper::Tie);
  CHECK(tie.area_bound == doctest::Approx(2.0 * kPi2).epsilon(1e-13));
  CHECK(tie.side_bound == doctest::Approx(2.0 * kPi2).epsilon(1e-12));

  // l^2 < 4|T|: the side-length bound is the better (larger) one
  const TriangleBounds side =
      triangle_bounds(TriangleParams::from_sides_angle(4.0, 3.0, 5 * kPi / 12));
  CHECK(side.sharper == TriangleBounds::Sharper::Side);
  CHECK(side.side_bound > side.area_bound);

  // l^2 > 4|T|: the area bound wins; the length normalization matters here
  const TriangleBounds area =
      triangle_bounds(TriangleParams::from_sides_angle(4.0, 2.0, 5 * kPi / 12));
  CHECK(area.sharper == TriangleBounds::Sharper::Area);
  CHECK(area.area_bound > area.side_bound);
}

TEST_CASE("axis pattern parsing") {
  CHECK(axis_pattern_from_string("DD") == AxisPattern::DD);
  CHECK(axis_pattern_from_string("NN") == AxisPattern::NN);
  CHECK(axis_pattern_from_string("DN") == AxisPattern::DN);
  CHECK(to_string(AxisPattern::DN) == "DN");
  CHECK_THROWS_AS(axis_pattern_from_string("XX"), std::invalid_argument);
  CHECK_THROWS_AS(rectangle_spectrum(0, 1, AxisPattern::DD, AxisPattern::DD, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(rectangle_spectrum(1, 1, AxisPattern::DD, AxisPattern::DD, 0),
                  std::invalid_argument);
}
