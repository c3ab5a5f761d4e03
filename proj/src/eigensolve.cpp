#include "specpoly/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

namespace specpoly {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kDenseLimit = 400;
constexpr int kMaxIterations = 500;

Eigen::VectorXd residuals_of(const AssembledSystem& sys, const Eigen::VectorXd& vals,
                             const Eigen::MatrixXd& vecs) {
  Eigen::VectorXd r(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    const Eigen::VectorXd bx = sys.B * vecs.col(i);
    r[i] = (sys.K * vecs.col(i) - vals[i] * bx).norm() /
           (bx.norm() * std::max(vals[i], 1.0));
  }
  return r;
}

}  // namespace

DiscreteSpectrum smallest_eigs(const AssembledSystem& sys, int k, double tol) {
  const int n = sys.dim();
  if (k < 1) throw std::invalid_argument("eigenvalue count must be positive");
  if (k > n)
    throw std::invalid_argument("requested " + std::to_string(k) +
                                " eigenvalues but the system has only " +
                                std::to_string(n) +
                                " free degrees of freedom; refine the mesh");

  if (n <= kDenseLimit) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
        Eigen::MatrixXd(sys.K), Eigen::MatrixXd(sys.B));
    if (es.info() != Eigen::Success)
      throw SolverError("dense generalized eigensolve failed");
    DiscreteSpectrum out;
    out.values = es.eigenvalues().head(k);
    out.vectors = es.eigenvectors().leftCols(k);
    out.residuals = residuals_of(sys, out.values, out.vectors);
    return out;
  }

  // Shift-invert block subspace iteration. K is positive definite whenever a
  // Dirichlet side is present; the pure Neumann pencil is shifted below zero
  // to keep the factorization definite.
  const double sigma =
      sys.pure_neumann ? -std::pow(kPi / sys.domain_diameter, 2) : 0.0;
  SpMat A = sys.K;
  if (sigma != 0.0) A = SpMat(sys.K - sigma * sys.B);
  Eigen::SimplicialLDLT<SpMat> ldlt(A);
  if (ldlt.info() != Eigen::Success)
    throw SolverError("factorization of the shifted stiffness matrix failed");

  const int m = std::min(n, std::max(2 * k, k + 8));
  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd X(n, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) X(i, j) = gauss(rng);

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const Eigen::MatrixXd Y = ldlt.solve(sys.B * X);
    Eigen::MatrixXd Kr = Y.transpose() * (sys.K * Y).eval();
    Eigen::MatrixXd Br = Y.transpose() * (sys.B * Y).eval();
    Kr = (0.5 * (Kr + Kr.transpose())).eval();
    Br = (0.5 * (Br + Br.transpose())).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Kr, Br);
    if (es.info() != Eigen::Success)
      throw SolverError("reduced eigensolve failed during subspace iteration");
    X = Y * es.eigenvectors();

    const Eigen::VectorXd vals = es.eigenvalues().head(k);
    const Eigen::VectorXd res = residuals_of(sys, vals, X.leftCols(k));
    if ((res.array() <= tol).all()) {
      DiscreteSpectrum out;
      out.values = vals;
      out.vectors = X.leftCols(k);
      out.residuals = res;
      return out;
    }
  }
  throw SolverError("subspace iteration did not reach tolerance within " +
                    std::to_string(kMaxIterations) + " iterations");
}

namespace {

Spectrum solve_levels(const ShapeSpec& shape, const BoundaryCondition& bc, int k,
                      int level_lo, int level_hi, double tol) {
  shape.validate();
  bc.validate_for(shape);
  if (k < 1) throw std::invalid_argument("eigenvalue count must be positive");
  if (level_lo < 0 || level_hi > kMaxRefineLevel || level_hi - level_lo < 2)
    throw std::invalid_argument(
        "need at least three consecutive refinement levels within 0.." +
        std::to_string(kMaxRefineLevel));

  Spectrum sp;
  sp.shape = shape;
  sp.bc = bc;

  Mesh mesh = triangulate(shape, level_lo);
  for (int lev = level_lo; lev <= level_hi; ++lev) {
    if (lev > level_lo) mesh = refine(mesh);
    const AssembledSystem sys = assemble(mesh, bc);
    const DiscreteSpectrum eig = smallest_eigs(sys, k, tol);
    sp.levels.push_back(lev);
    sp.per_level.emplace_back(eig.values.data(), eig.values.data() + k);
    if (lev == level_hi)
      sp.residuals.assign(eig.residuals.data(), eig.residuals.data() + k);
  }

  const int start = bc.empty() ? 1 : 0;  // skip the exact Neumann zero mode
  for (std::size_t j = 1; j < sp.per_level.size(); ++j)
    for (int i = start; i < k; ++i)
      if (sp.per_level[j][i] > sp.per_level[j - 1][i] * (1.0 + 1e-12))
        sp.suspicious = true;

  const auto& last = sp.per_level.back();
  const auto& prev = sp.per_level[sp.per_level.size() - 2];
  sp.values.resize(k);
  sp.error_bars.resize(k);
  for (int i = 0; i < k; ++i) {
    const double ext = (4.0 * last[i] - prev[i]) / 3.0;
    sp.values[i] = ext;
    sp.error_bars[i] = std::abs(last[i] - ext);
  }
  return sp;
}

}  // namespace

Spectrum solve_mixed(const ShapeSpec& shape, const BoundaryCondition& bc, int k,
                     int level_lo, int level_hi, double tol) {
  if (bc.empty())
    throw std::invalid_argument(
        "the Dirichlet set is empty; use solve_neumann for the pure Neumann "
        "problem");
  Spectrum sp = solve_levels(shape, bc, k, level_lo, level_hi, tol);
  for (double v : sp.values)
    if (!(v > 0)) throw SolverError("nonpositive eigenvalue from a Dirichlet-constrained solve");
  return sp;
}

Spectrum solve_neumann(const ShapeSpec& shape, int k, int level_lo, int level_hi,
                       double tol) {
  Spectrum sp = solve_levels(shape, BoundaryCondition{}, k, level_lo, level_hi, tol);
  for (std::size_t j = 0; j < sp.per_level.size(); ++j) {
    auto& v = sp.per_level[j];
    const double scale = v.size() > 1 ? std::max(v[1], 1.0) : 1.0;
    if (std::abs(v[0]) > 1e-8 * scale)
      throw SolverError("pure Neumann solve did not produce a numerical zero mode");
    v[0] = 0.0;
  }
  sp.values[0] = 0.0;
  sp.error_bars[0] = 0.0;
  return sp;
}

nlohmann::json Spectrum::to_json() const {
  nlohmann::json j;
  j["shape"] = shape.to_json();
  j["dirichlet"] = bc.dirichlet;
  j["levels"] = levels;
  j["values"] = values;
  j["errors"] = error_bars;
  j["per_level"] = per_level;
  j["residuals"] = residuals;
  j["suspicious"] = suspicious;
  return j;
}

void Spectrum::write_csv(std::ostream& out) const {
  out << "index,value,error_bar,residual";
  for (int lev : levels) out << ",level_" << lev;
  out << "\n";
  char buf[64];
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << (i + 1);
    std::snprintf(buf, sizeof buf, ",%.15g", values[i]);
    out << buf;
    std::snprintf(buf, sizeof buf, ",%.15g", error_bars[i]);
    out << buf;
    std::snprintf(buf, sizeof buf, ",%.15g", residuals[i]);
    out << buf;
    for (const auto& lvl : per_level) {
      std::snprintf(buf, sizeof buf, ",%.15g", lvl[i]);
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace specpoly
