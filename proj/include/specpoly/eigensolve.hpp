#pragma once

#include <vector>

#include <json.hpp>

#include "specpoly/fem.hpp"

namespace specpoly {

/// Thrown when the iterative eigensolver does not reach the residual
/// tolerance within the iteration cap, or a factorization breaks down.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Discrete eigenpairs of K x = lambda B x, ascending. Vectors are
/// B-orthonormal columns. residuals[i] = |K x - lambda B x| / (|B x| * max(lambda, 1)).
struct DiscreteSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  Eigen::VectorXd residuals;
};

/// k smallest eigenpairs via shift-invert block subspace iteration
/// (SimplicialLDLT factorization of K - sigma*B; sigma = 0 for definite K,
/// sigma < 0 for the pure-Neumann semidefinite case). Small systems fall back
/// to a dense solve. Throws SolverError after 500 outer iterations without
/// convergence and std::invalid_argument when k exceeds the system dimension.
DiscreteSpectrum smallest_eigs(const AssembledSystem& sys, int k, double tol = 1e-10);

/// Multi-level solve with Richardson extrapolation. values are the
/// extrapolated continuum estimates; error_bars[i] = |finest - extrapolated|.
/// per_level[j] holds the discrete values at levels[j]. Discrete values must
/// decrease with level (nested spaces); a non-monotone sequence sets
/// `suspicious` but is still reported.
struct Spectrum {
  ShapeSpec shape;
  BoundaryCondition bc;
  std::vector<int> levels;
  std::vector<std::vector<double>> per_level;
  std::vector<double> values;
  std::vector<double> error_bars;
  std::vector<double> residuals;  // finest level
  bool suspicious = false;

  nlohmann::json to_json() const;
  void write_csv(std::ostream& out) const;
};

/// Solve the mixed problem on shape with Dirichlet data `bc` at refinement
/// levels level_lo..level_hi (at least 3 consecutive levels) and extrapolate.
/// Requires a nonempty Dirichlet set (use solve_neumann otherwise).
Spectrum solve_mixed(const ShapeSpec& shape, const BoundaryCondition& bc, int k,
                     int level_lo = 3, int level_hi = 6, double tol = 1e-10);

/// Pure Neumann spectrum; the zero eigenvalue is verified numerically
/// (values[0] <= 1e-8 * max(values[1], 1)) and then reported as exact 0.
Spectrum solve_neumann(const ShapeSpec& shape, int k,
                       int level_lo = 3, int level_hi = 6, double tol = 1e-10);

}  // namespace specpoly
