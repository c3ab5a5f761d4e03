#include "specpoly/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace specpoly {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// idx-th axis frequency (idx >= 0): the 1-D eigenvalue along an interval of
// length c with the given end conditions.
double axis_freq(AxisPattern p, double c, int idx) {
  double mode = 0;
  switch (p) {
    case AxisPattern::DD: mode = idx + 1.0; break;
    case AxisPattern::NN: mode = idx; break;
    case AxisPattern::DN: mode = idx + 0.5; break;
  }
  const double w = mode * kPi / c;
  return w * w;
}

}  // namespace

AxisPattern axis_pattern_from_string(const std::string& s) {
  if (s == "DD") return AxisPattern::DD;
  if (s == "NN") return AxisPattern::NN;
  if (s == "DN" || s == "ND") return AxisPattern::DN;
  fail("unknown axis pattern '" + s + "'; expected DD, NN, or DN");
}

std::string to_string(AxisPattern p) {
  switch (p) {
    case AxisPattern::DD: return "DD";
    case AxisPattern::NN: return "NN";
    case AxisPattern::DN: return "DN";
  }
  return "?";
}

std::vector<double> rectangle_spectrum(double a, double b, AxisPattern px,
                                       AxisPattern py, int count) {
  if (!(a > 0) || !(b > 0)) fail("rectangle sides must be positive");
  if (count < 1) fail("eigenvalue count must be positive");

  // k smallest sums of two sorted sequences: lazy frontier expansion. Cell
  // (i, j) is pushed from (i-1, j) only while j == 0 and from (i, j-1)
  // otherwise, so every index pair enters the heap exactly once.
  struct Cell {
    double v;
    int i, j;
    bool operator>(const Cell& o) const { return v > o.v; }
  };
  std::priority_queue<Cell, std::vector<Cell>, std::greater<Cell>> heap;
  heap.push({axis_freq(px, a, 0) + axis_freq(py, b, 0), 0, 0});
  std::vector<double> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    const Cell c = heap.top();
    heap.pop();
    out.push_back(c.v);
    heap.push({axis_freq(px, a, c.i) + axis_freq(py, b, c.j + 1), c.i, c.j + 1});
    if (c.j == 0)
      heap.push({axis_freq(px, a, c.i + 1) + axis_freq(py, b, c.j), c.i + 1, c.j});
  }
  return out;
}

std::int64_t rectangle_count_below(double a, double b, double lambda) {
  if (!(a > 0) || !(b > 0)) fail("rectangle sides must be positive");
  std::int64_t total = 0;
  for (std::int64_t j = 0;; ++j) {
    const double rad = lambda - (kPi * j / b) * (kPi * j / b);
    if (rad < 0) break;
    total += static_cast<std::int64_t>(std::floor(a / kPi * std::sqrt(rad)));
  }
  return total;
}

double cylinder_mu2(double l, double h) {
  if (!(l > 0) || !(h > 0)) fail("cylinder dimensions must be positive");
  return std::min(kPi * kPi / (h * h), 4.0 * kPi * kPi / (l * l));
}

double counting_x(double y) {
  if (y <= 0) return 0;
  double sum = 0;
  for (double j = 0; j * j < y; ++j) sum += std::sqrt(y - j * j);
  return sum;
}

double counting_inverse_m(double x) {
  if (x < 0) fail("argument of the inverse counting function must be nonnegative");
  if (x <= 1) return x * x;  // only the j = 0 term is active
  double lo = 0, hi = x * x + 1;  // counting_x(x^2+1) >= sqrt(x^2+1) > x
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    (counting_x(mid) < x ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double polya_lower_bound(int k, double h, double m) {
  if (k < 1) fail("eigenvalue index must be positive");
  if (!(h > 0) || !(m > 0)) fail("height and mean width must be positive");
  if (h * k <= m) return kPi * kPi * k * k / (m * m);
  return kPi * kPi / (h * h) * counting_inverse_m(h * k / m);
}

TriangleBounds triangle_bounds(const TriangleParams& p) {
  TriangleBounds b;
  b.area_bound = kPi * kPi / p.area;
  b.side_bound = 4.0 * kPi * kPi / (p.l * p.l);
  const double lhs = p.l * p.l, rhs = 4.0 * p.area;
  if (std::abs(lhs - rhs) <= 1e-9 * lhs)
    b.sharper = TriangleBounds::Sharper::Tie;
  else
    b.sharper = lhs > rhs ? TriangleBounds::Sharper::Area : TriangleBounds::Sharper::Side;
  return b;
}

}  // namespace specpoly
