#pragma once

#include <cstdint>
#include <vector>

#include "specpoly/geometry.hpp"

namespace specpoly {

/// One-dimensional boundary pattern along a rectangle axis.
///   DD: Dirichlet both ends, frequencies (i*pi/c)^2, i >= 1
///   NN: Neumann both ends,   frequencies (i*pi/c)^2, i >= 0
///   DN: mixed,               frequencies ((i+1/2)*pi/c)^2, i >= 0
enum class AxisPattern { DD, NN, DN };

AxisPattern axis_pattern_from_string(const std::string& s);
std::string to_string(AxisPattern p);

/// The `count` smallest eigenvalues of the a-by-b rectangle with pattern px
/// along x and py along y, ascending with multiplicity. Exact separated sums.
std::vector<double> rectangle_spectrum(double a, double b, AxisPattern px,
                                       AxisPattern py, int count);

/// Number of DDxNN eigenvalues of the a-by-b rectangle that are <= lambda
/// (Dirichlet on the two sides of length b): sum over j >= 0 of
/// floor(a/pi * sqrt(lambda - pi^2 j^2 / b^2)) over nonnegative radicands.
std::int64_t rectangle_count_below(double a, double b, double lambda);

/// First nonzero Neumann eigenvalue of the cylinder of circumference l and
/// height h (periodic in x, Neumann top/bottom): min(pi^2/h^2, 4 pi^2/l^2).
double cylinder_mu2(double l, double h);

/// x(y) = sum_{j>=0} sqrt(max(y - j^2, 0)); strictly increasing for y >= 0.
double counting_x(double y);

/// Inverse of counting_x: M(x)=x^2 exactly for 0 <= x <= 1, bisection on
/// [0, x^2+1] to 1e-12 otherwise.
double counting_inverse_m(double x);

/// (pi^2/h^2) * M(h*k/m); equals pi^2 k^2 / m^2 exactly when h*k <= m.
double polya_lower_bound(int k, double h, double m);

/// The two lower bounds for the smallest eigenvalue with Dirichlet on the two
/// shorter sides: pi^2/area and 4 pi^2/l^2, and which is sharper (larger).
struct TriangleBounds {
  double area_bound = 0;
  double side_bound = 0;
  enum class Sharper { Area, Side, Tie } sharper = Sharper::Tie;
};
TriangleBounds triangle_bounds(const TriangleParams& p);

}  // namespace specpoly
