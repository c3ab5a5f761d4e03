#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "specpoly/closedform.hpp"
#include "specpoly/eigensolve.hpp"

namespace specpoly {

struct VerifyOptions {
  int level_lo = 3;
  int level_hi = 6;
  double tol = 1e-10;
  int parallelism = 0;  // 0 = hardware concurrency
};

/// Outcome of one inequality instance. `HoldsWithinError` marks margins
/// smaller than the numerical error bar (equality cases land here);
/// `Violated` requires computed + error_bar < bound.
enum class Verdict { Holds, HoldsWithinError, Violated };
std::string to_string(Verdict v);

struct InstanceResult {
  nlohmann::json params;
  double computed = 0;
  double bound = 0;
  double margin = 0;     // computed - bound
  double error_bar = 0;
  Verdict verdict = Verdict::Holds;
  bool rigidity_fired = false;   // margin below the equality threshold
  bool rigidity_shape_ok = true; // and the shape matches the known extremizer
  nlohmann::json extra;
};

struct VerificationReport {
  std::string check;
  std::vector<InstanceResult> instances;
  nlohmann::json extra;

  int violations() const;
  std::string aggregate() const;  // "holds" / "holds-within-error" / "violated"
  nlohmann::json to_json() const;
  /// One row per instance; flattened scalar params, then computed, bound,
  /// margin, error_bar, verdict. Deterministic column order and formatting
  /// (15 significant digits).
  void write_csv(std::ostream& out) const;
};

// --- shape families ----------------------------------------------------------

/// n values spanning [lo, hi] with the grid shifted so one point equals
/// `anchor` exactly (anchor must lie inside [lo, hi]).
std::vector<double> linspace_through(double lo, double hi, int n, double anchor);

/// Triangles of fixed area on an (apex angle, m/s ratio) grid: angles linear
/// through pi/2, ratios log-uniform through 1, instances with
/// longest-side/altitude aspect beyond `aspect_cap` dropped.
std::vector<TriangleParams> triangle_grid(double area, int n_alpha, int n_ratio,
                                          double alpha_lo = 1.0908,
                                          double alpha_hi = 2.1708,
                                          double ratio_max = 4.0,
                                          double aspect_cap = 20.0);

/// Right triangles of fixed area with leg ratios log-uniform on [1, ratio_max]
/// (ratio 1 = isosceles right, included exactly).
std::vector<TriangleParams> right_triangle_grid(double area, int n, double ratio_max = 4.0);

/// Trapezoids with fixed mean width m and height h on a (side spread, shear
/// offset) grid; spread 0 + offset 0 is the m-by-h rectangle (included).
std::vector<TrapezoidParams> trapezoid_grid(double m, double h, int n_spread, int n_offset);

/// Right trapezoids of fixed area over (l1/l2, leg-to-width ratio tau) with
/// u = 1, tau = 1 (the rectangle with legs twice the parallel sides) included
/// exactly. Returns (l1, l2, h) triples.
std::vector<std::array<double, 3>> right_trapezoid_grid(double area, int n_u, int n_tau);

// --- checks ------------------------------------------------------------------

/// lambda_1 with Dirichlet on the two shorter sides >= pi^2 / area, equality
/// exactly at the isosceles right triangle.
VerificationReport check_thm4(const std::vector<TriangleParams>& grid, const VerifyOptions& opt);

/// Right triangles, Dirichlet on the hypotenuse: lambda_1 >= pi^2 / (2 area),
/// equality at the isosceles right triangle, where it also equals mu_2.
VerificationReport check_thm5(const std::vector<TriangleParams>& grid, const VerifyOptions& opt);

/// The side-length variant lambda_1^{MS} >= 4 pi^2 / l^2. Each instance also
/// records the cylinder bound min(pi^2/h^2, 4 pi^2/l^2) (h = altitude onto
/// the longest side), which is what the trial-function argument actually
/// proves; the 4 pi^2/l^2 form fails for tall acute triangles and the report
/// says so per instance.
VerificationReport check_thm6(const std::vector<TriangleParams>& grid, const VerifyOptions& opt);

/// Full ordering chain for the right triangle with smallest angle alpha:
/// 0 = mu_1 < lambda_1^S < lambda_1^M < mu_2 < lambda_1^L < lambda_1^{MS}
/// < lambda_1^{LS} < lambda_1^{LM} < lambda_1. Strict for
/// pi/6 < alpha < pi/4; at the endpoints the flagged pairs merge.
VerificationReport check_thm3_ordering(double alpha, double area, const VerifyOptions& opt);

/// Single-Dirichlet-side comparison lambda_1^S <= lambda_1^M <= lambda_1^L
/// <= lambda_1^{MS} on general triangles, plus where mu_2 falls.
VerificationReport explore_open_problem2(const std::vector<TriangleParams>& grid,
                                         const VerifyOptions& opt);

/// Trapezoids with Dirichlet legs: lambda_k >= pi^2 k^2 / m^2 when
/// h/m <= 1/k (throws std::invalid_argument otherwise), equality at the
/// rectangle. The bound cross-checks polya_lower_bound and the closed-form
/// rectangle value.
VerificationReport check_thm8(const std::vector<TrapezoidParams>& grid, int k,
                              const VerifyOptions& opt);

/// Right trapezoids, Dirichlet on both parallel sides and the slant leg:
/// lambda_1 >= pi^2 / area, equality at the rectangle whose legs are twice
/// its parallel sides.
VerificationReport check_thm9(const std::vector<std::array<double, 3>>& grid,
                              const VerifyOptions& opt);

/// Folding comparison for one triangle: lambda_1^{MS}(T) >= lambda_1(kite) >=
/// 2 pi^2 / |kite|, plus the exact discrete identity: the symmetric extension
/// of the discrete eigenvector to the mirrored mesh has the same Rayleigh
/// quotient (1e-12 relative, per level).
VerificationReport check_symmetrization(const TriangleParams& tri, const VerifyOptions& opt);

// --- minimization ------------------------------------------------------------

enum class FamilyKind { Triangles, RightTrapezoids, Rectangles };
FamilyKind family_from_string(const std::string& s);

/// Eigenvalue functional "lambda<k>-<SET>", e.g. lambda1-MS, lambda1-l1l2w1,
/// lambda1-all. SET is resolved against the family's side labels.
struct Functional {
  int index = 1;
  std::string dirichlet;
  static Functional parse(const std::string& text);
  BoundaryCondition boundary_for(const ShapeSpec& shape) const;
};

struct RestartResult {
  std::vector<double> start;
  std::vector<double> best;
  double value = 0;
  int evaluations = 0;
};

struct MinimizeResult {
  FamilyKind family = FamilyKind::Triangles;
  double area = 0;
  std::vector<RestartResult> restarts;
  std::vector<double> best_params;
  double best_value = 0;
  ShapeSpec best_shape;
  double restart_spread = 0;  // max relative disagreement across restarts
  bool converged = false;     // spread within 0.5%

  nlohmann::json to_json() const;
};

/// Derivative-free (Nelder-Mead) minimization of the functional over the
/// area-normalized family, 5 deterministic restarts.
MinimizeResult minimize_functional(FamilyKind family, const Functional& f, double area,
                                   const VerifyOptions& opt);

}  // namespace specpoly
