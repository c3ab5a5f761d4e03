#include "specpoly/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace specpoly {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string fmt15(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.15g", v);
  return b;
}

std::string csv_cell(const nlohmann::json& v) {
  if (v.is_number_float()) return fmt15(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

/// Index-deterministic parallel loop: f(i) must write only to slot i of a
/// preallocated result vector, so the outcome is independent of scheduling.
template <typename F>
void parallel_for(int n, int parallelism, F&& f) {
  int threads = parallelism > 0 ? parallelism
                                : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, n));
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

/// Verdict and rigidity bookkeeping shared by all checks. `bound` is the
/// claimed lower bound for `computed`.
InstanceResult judge(nlohmann::json params, double computed, double bound,
                     double error_bar) {
  InstanceResult r;
  r.params = std::move(params);
  r.computed = computed;
  r.bound = bound;
  r.margin = computed - bound;
  r.error_bar = error_bar;
  if (computed + error_bar < bound)
    r.verdict = Verdict::Violated;
  else if (r.margin < error_bar)
    r.verdict = Verdict::HoldsWithinError;
  else
    r.verdict = Verdict::Holds;
  r.rigidity_fired = r.margin < error_bar + 1e-3 * std::abs(bound);
  return r;
}

nlohmann::json triangle_params_json(const TriangleParams& p) {
  return {{"alpha", p.apex_angle}, {"area", p.area},      {"l", p.l},
          {"m", p.m},              {"ratio_ms", p.ratio_ms()}, {"s", p.s}};
}

bool is_isosceles_right(const TriangleParams& p, double rel = 0.01) {
  return std::abs(p.apex_angle - kPi / 2) <= rel * (kPi / 2) &&
         std::abs(p.ratio_ms() - 1.0) <= rel;
}

double solve_one(const ShapeSpec& shape, const BoundaryCondition& bc,
                 const VerifyOptions& opt, double* bar) {
  const Spectrum sp = solve_mixed(shape, bc, 1, opt.level_lo, opt.level_hi, opt.tol);
  if (bar) *bar = sp.error_bars[0];
  return sp.values[0];
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::HoldsWithinError: return "holds-within-error";
    case Verdict::Violated: return "violated";
  }
  return "?";
}

int VerificationReport::violations() const {
  int n = 0;
  for (const auto& i : instances)
    if (i.verdict == Verdict::Violated) ++n;
  return n;
}

std::string VerificationReport::aggregate() const {
  bool within = false;
  for (const auto& i : instances) {
    if (i.verdict == Verdict::Violated) return "violated";
    within = within || i.verdict == Verdict::HoldsWithinError;
  }
  return within ? "holds-within-error" : "holds";
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& i : instances)
    arr.push_back({{"params", i.params},
                   {"computed", i.computed},
                   {"bound", i.bound},
                   {"margin", i.margin},
                   {"error_bar", i.error_bar},
                   {"verdict", to_string(i.verdict)},
                   {"rigidity_fired", i.rigidity_fired},
                   {"rigidity_shape_ok", i.rigidity_shape_ok},
                   {"extra", i.extra}});
  return {{"check", check},
          {"aggregate", aggregate()},
          {"violations", violations()},
          {"instances", arr},
          {"extra", extra}};
}

void VerificationReport::write_csv(std::ostream& out) const {
  if (instances.empty()) {
    out << "check,aggregate\n" << check << "," << aggregate() << "\n";
    return;
  }
  std::vector<std::string> keys;
  for (auto it = instances[0].params.begin(); it != instances[0].params.end(); ++it)
    keys.push_back(it.key());
  for (const auto& k : keys) out << k << ",";
  out << "computed,bound,margin,error_bar,verdict,rigidity_fired,rigidity_shape_ok\n";
  for (const auto& ins : instances) {
    for (const auto& k : keys)
      out << (ins.params.contains(k) ? csv_cell(ins.params.at(k)) : "") << ",";
    out << fmt15(ins.computed) << "," << fmt15(ins.bound) << "," << fmt15(ins.margin)
        << "," << fmt15(ins.error_bar) << "," << to_string(ins.verdict) << ","
        << (ins.rigidity_fired ? 1 : 0) << "," << (ins.rigidity_shape_ok ? 1 : 0)
        << "\n";
  }
}

// --- shape families ----------------------------------------------------------

std::vector<double> linspace_through(double lo, double hi, int n, double anchor) {
  if (n < 1) fail("grid size must be positive");
  if (!(lo <= anchor && anchor <= hi)) fail("grid anchor must lie inside the range");
  if (n == 1) return {anchor};
  std::vector<double> pts(n);
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) pts[i] = lo + i * step;
  int nearest = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(pts[i] - anchor) < std::abs(pts[nearest] - anchor)) nearest = i;
  const double shift = anchor - pts[nearest];
  for (auto& p : pts) p += shift;
  pts[nearest] = anchor;  // exact, no roundoff residue
  return pts;
}

std::vector<TriangleParams> triangle_grid(double area, int n_alpha, int n_ratio,
                                          double alpha_lo, double alpha_hi,
                                          double ratio_max, double aspect_cap) {
  if (!(area > 0)) fail("area must be positive");
  const auto alphas = linspace_through(alpha_lo, alpha_hi, n_alpha, kPi / 2);
  const auto logr = linspace_through(0.0, std::log(ratio_max), n_ratio, 0.0);
  std::vector<TriangleParams> grid;
  grid.reserve(static_cast<std::size_t>(n_alpha) * n_ratio);
  for (const double alpha : alphas) {
    // the anchor shift can push endpoints outside the constructible range
    if (alpha < kPi / 3 || alpha >= kPi) continue;
    for (const double lr : logr) {
      const double r = std::exp(lr);
      const double ms = 2.0 * area / std::sin(alpha);
      const double m = std::sqrt(ms * r);
      const TriangleParams p = TriangleParams::from_sides_angle(m, m / r, alpha);
      if (p.l * p.l / (2.0 * p.area) > aspect_cap) continue;
      grid.push_back(p);
    }
  }
  return grid;
}

std::vector<TriangleParams> right_triangle_grid(double area, int n, double ratio_max) {
  if (!(area > 0)) fail("area must be positive");
  const auto logr = linspace_through(0.0, std::log(ratio_max), n, 0.0);
  std::vector<TriangleParams> grid;
  grid.reserve(n);
  for (const double lr : logr) {
    const double t = std::exp(lr);  // ratio of the two legs, >= 1
    const double g1 = std::sqrt(2.0 * area * t);
    grid.push_back(TriangleParams::from_sides_angle(g1, g1 / t, kPi / 2));
  }
  return grid;
}

std::vector<TrapezoidParams> trapezoid_grid(double m, double h, int n_spread,
                                            int n_offset) {
  if (!(m > 0) || !(h > 0)) fail("trapezoid dimensions must be positive");
  const auto spreads = linspace_through(0.0, 0.7 * m, n_spread, 0.0);
  const auto shears = linspace_through(-0.5 * m, 0.5 * m, n_offset, 0.0);
  std::vector<TrapezoidParams> grid;
  grid.reserve(static_cast<std::size_t>(n_spread) * n_offset);
  for (const double d : spreads)
    for (const double mu : shears) {
      TrapezoidParams p;
      p.p1 = m - d;
      p.p2 = m + d;
      p.h = h;
      p.top_offset = d + mu;  // mu = 0 is the isosceles placement
      grid.push_back(p);
    }
  return grid;
}

std::vector<std::array<double, 3>> right_trapezoid_grid(double area, int n_u,
                                                        int n_tau) {
  if (!(area > 0)) fail("area must be positive");
  const auto us = linspace_through(0.3, 1.0, n_u, 1.0);
  const auto logt = linspace_through(std::log(0.4), std::log(2.5), n_tau, 0.0);
  std::vector<std::array<double, 3>> grid;
  grid.reserve(static_cast<std::size_t>(n_u) * n_tau);
  for (const double u : us)
    for (const double lt : logt) {
      const double tau = std::exp(lt);  // height over twice the mean width
      const double l2 = std::sqrt(2.0 * area / tau) / (1.0 + u);
      const double h = std::sqrt(2.0 * area * tau);
      grid.push_back({u * l2, l2, h});
    }
  return grid;
}

// --- checks ------------------------------------------------------------------

VerificationReport check_thm4(const std::vector<TriangleParams>& grid,
                              const VerifyOptions& opt) {
  VerificationReport rep;
  rep.check = "thm4";
  rep.instances.resize(grid.size());
  parallel_for(static_cast<int>(grid.size()), opt.parallelism, [&](int i) {
    const TriangleParams& p = grid[i];
    const ShapeSpec shape = triangle_from_params(p);
    double bar = 0;
    const double lam = solve_one(shape, BoundaryCondition{{"M", "S"}}, opt, &bar);
    InstanceResult r = judge(triangle_params_json(p), lam, kPi * kPi / p.area, bar);
    if (r.rigidity_fired) r.rigidity_shape_ok = is_isosceles_right(p);
    rep.instances[i] = std::move(r);
  });
  return rep;
}

VerificationReport check_thm5(const std::vector<TriangleParams>& grid,
                              const VerifyOptions& opt) {
  for (const auto& p : grid)
    if (std::abs(p.apex_angle - kPi / 2) > 1e-9)
      fail("the hypotenuse check applies to right triangles only");
  VerificationReport rep;
  rep.check = "thm5";
  rep.instances.resize(grid.size());
  parallel_for(static_cast<int>(grid.size()), opt.parallelism, [&](int i) {
    const TriangleParams& p = grid[i];
    const ShapeSpec shape = triangle_from_params(p);
    double bar = 0;
    const double lam = solve_one(shape, BoundaryCondition{{"L"}}, opt, &bar);
    const Spectrum nm = solve_neumann(shape, 2, opt.level_lo, opt.level_hi, opt.tol);
    InstanceResult r =
        judge(triangle_params_json(p), lam, kPi * kPi / (2.0 * p.area), bar);
    if (r.rigidity_fired) r.rigidity_shape_ok = is_isosceles_right(p);
    r.extra = {{"mu2", nm.values[1]},
               {"mu2_error", nm.error_bars[1]},
               {"lambda_minus_mu2", lam - nm.values[1]}};
    rep.instances[i] = std::move(r);
  });
  return rep;
}

VerificationReport check_thm6(const std::vector<TriangleParams>& grid,
                              const VerifyOptions& opt) {
  VerificationReport rep;
  rep.check = "thm6";
  rep.instances.resize(grid.size());
  parallel_for(static_cast<int>(grid.size()), opt.parallelism, [&](int i) {
    const TriangleParams& p = grid[i];
    const ShapeSpec shape = triangle_from_params(p);
    double bar = 0;
    const double lam = solve_one(shape, BoundaryCondition{{"M", "S"}}, opt, &bar);
    InstanceResult r =
        judge(triangle_params_json(p), lam, 4.0 * kPi * kPi / (p.l * p.l), bar);
    if (r.rigidity_fired) r.rigidity_shape_ok = is_isosceles_right(p);
    const double altitude = 2.0 * p.area / p.l;
    const double cyl = cylinder_mu2(p.l, altitude);
    r.extra = {{"cylinder_bound", cyl},
               {"cylinder_margin", lam - cyl},
               {"cylinder_holds", lam + bar >= cyl}};
    rep.instances[i] = std::move(r);
  });
  int cyl_viol = 0;
  for (const auto& r : rep.instances)
    if (!r.extra.value("cylinder_holds", true)) ++cyl_viol;
  rep.extra = {{"cylinder_bound_violations", cyl_viol}};
  return rep;
}

VerificationReport check_thm3_ordering(double alpha, double area,
                                       const VerifyOptions& opt) {
  if (!(alpha > 0) || alpha > kPi / 4 + 1e-12)
    fail("the ordering chain takes the smallest angle of a right triangle, in (0, pi/4]");
  const ShapeSpec shape = right_triangle_from_angle(alpha, area);

  struct Task {
    std::string name;
    std::vector<std::string> dirichlet;  // empty = pure Neumann
  };
  const std::vector<Task> tasks = {
      {"mu", {}},           {"lambda1_S", {"S"}},       {"lambda1_M", {"M"}},
      {"lambda1_L", {"L"}}, {"lambda1_MS", {"M", "S"}}, {"lambda1_LS", {"L", "S"}},
      {"lambda1_LM", {"L", "M"}}, {"lambda1_LMS", {"L", "M", "S"}}};

  std::vector<double> vals(tasks.size()), bars(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), opt.parallelism, [&](int i) {
    if (tasks[i].dirichlet.empty()) {
      const Spectrum sp = solve_neumann(shape, 2, opt.level_lo, opt.level_hi, opt.tol);
      vals[i] = sp.values[1];  // first nonzero mode
      bars[i] = sp.error_bars[1];
    } else {
      const Spectrum sp = solve_mixed(shape, BoundaryCondition{tasks[i].dirichlet}, 1,
                                      opt.level_lo, opt.level_hi, opt.tol);
      vals[i] = sp.values[0];
      bars[i] = sp.error_bars[0];
    }
  });

  auto idx = [&](const std::string& name) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      if (tasks[i].name == name) return static_cast<int>(i);
    fail("unknown quantity " + name);
  };

  VerificationReport rep;
  rep.check = "thm3";
  // mu_1 = 0 < lambda1_S, then each neighbour pair of the chain.
  const std::vector<std::pair<std::string, std::string>> chain = {
      {"mu1", "lambda1_S"},        {"lambda1_S", "lambda1_M"},
      {"lambda1_M", "mu2"},        {"mu2", "lambda1_L"},
      {"lambda1_L", "lambda1_MS"}, {"lambda1_MS", "lambda1_LS"},
      {"lambda1_LS", "lambda1_LM"}, {"lambda1_LM", "lambda1_LMS"}};
  for (const auto& [left, right] : chain) {
    const double lv = left == "mu1" ? 0.0 : vals[idx(left == "mu2" ? "mu" : left)];
    const double lb = left == "mu1" ? 0.0 : bars[idx(left == "mu2" ? "mu" : left)];
    const double rv = vals[idx(right == "mu2" ? "mu" : right)];
    const double rb = bars[idx(right == "mu2" ? "mu" : right)];
    InstanceResult r = judge({{"alpha", alpha}, {"area", area}, {"pair", left + " < " + right}},
                             rv, lv, lb + rb);
    r.rigidity_shape_ok = true;  // no extremal shape claim for chain links
    rep.instances.push_back(std::move(r));
  }
  nlohmann::json ex = {{"mu1", 0.0}, {"alpha", alpha}, {"area", area}};
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string name = tasks[i].name == "mu" ? "mu2" : tasks[i].name;
    ex[name] = vals[i];
    ex[name + "_error"] = bars[i];
  }
  rep.extra = std::move(ex);
  return rep;
}

VerificationReport explore_open_problem2(const std::vector<TriangleParams>& grid,
                                         const VerifyOptions& opt) {
  VerificationReport rep;
  rep.check = "open2";
  std::vector<std::vector<InstanceResult>> per(grid.size());
  parallel_for(static_cast<int>(grid.size()), opt.parallelism, [&](int gi) {
    const TriangleParams& p = grid[gi];
    const ShapeSpec shape = triangle_from_params(p);
    const std::vector<std::pair<std::string, std::vector<std::string>>> probs = {
        {"lambda1_S", {"S"}},
        {"lambda1_M", {"M"}},
        {"lambda1_L", {"L"}},
        {"lambda1_MS", {"M", "S"}}};
    std::vector<double> vals(probs.size()), bars(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
      const Spectrum sp = solve_mixed(shape, BoundaryCondition{probs[i].second}, 1,
                                      opt.level_lo, opt.level_hi, opt.tol);
      vals[i] = sp.values[0];
      bars[i] = sp.error_bars[0];
    }
    const Spectrum nm = solve_neumann(shape, 2, opt.level_lo, opt.level_hi, opt.tol);
    int rank = 0;
    for (const double v : vals)
      if (v < nm.values[1]) ++rank;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      nlohmann::json params = triangle_params_json(p);
      params["pair"] = probs[i].first + " <= " + probs[i + 1].first;
      InstanceResult r = judge(std::move(params), vals[i + 1], vals[i], bars[i] + bars[i + 1]);
      r.rigidity_shape_ok = true;
      r.extra = {{"mu2", nm.values[1]}, {"mu2_rank", rank}};
      per[gi].push_back(std::move(r));
    }
  });
  for (auto& chunk : per)
    for (auto& r : chunk) rep.instances.push_back(std::move(r));
  return rep;
}

VerificationReport check_thm8(const std::vector<TrapezoidParams>& grid, int k,
                              const VerifyOptions& opt) {
  if (k < 1) fail("eigenvalue index must be positive");
  for (const auto& g : grid)
    if (g.h * k > g.mean_width() * (1.0 + 1e-12))
      fail("the leg-Dirichlet bound requires h/m <= 1/k; got h = " + fmt15(g.h) +
           ", m = " + fmt15(g.mean_width()) + ", k = " + std::to_string(k));
  VerificationReport rep;
  rep.check = "thm8";
  rep.instances.resize(grid.size());
  parallel_for(static_cast<int>(grid.size()), opt.parallelism, [&](int i) {
    const TrapezoidParams& g = grid[i];
    const double m = g.mean_width();
    const ShapeSpec shape = trapezoid_from_params(g);
    const Spectrum sp = solve_mixed(shape, BoundaryCondition{{"Q1", "Q2"}}, k,
                                    opt.level_lo, opt.level_hi, opt.tol);
    const double bound = kPi * kPi * k * k / (m * m);
    InstanceResult r = judge({{"h", g.h},
                              {"mean_width", m},
                              {"p1", g.p1},
                              {"p2", g.p2},
                              {"top_offset", g.top_offset}},
                             sp.values[k - 1], bound, sp.error_bars[k - 1]);
    if (r.rigidity_fired)
      r.rigidity_shape_ok =
          g.p2 - g.p1 <= 0.01 * m && std::abs(g.top_offset) <= 0.01 * m;
    r.extra = {{"polya_bound", polya_lower_bound(k, g.h, m)},
               {"rect_value",
                rectangle_spectrum(m, g.h, AxisPattern::DD, AxisPattern::NN, k)[k - 1]}};
    rep.instances[i] = std::move(r);
  });
  rep.extra = {{"k", k}};
  return rep;
}

VerificationReport check_thm9(const std::vector<std::array<double, 3>>& grid,
                              const VerifyOptions& opt) {
  VerificationReport rep;
  rep.check = "thm9";
  rep.instances.resize(grid.size());
  parallel_for(static_cast<int>(grid.size()), opt.parallelism, [&](int i) {
    const auto [l1, l2, h] = grid[i];
    const ShapeSpec shape = right_trapezoid(l1, l2, h);
    const double area = 0.5 * (l1 + l2) * h;
    double bar = 0;
    const double lam =
        solve_one(shape, BoundaryCondition{{"l1", "l2", "w1"}}, opt, &bar);
    InstanceResult r = judge({{"area", area},
                              {"h", h},
                              {"l1", l1},
                              {"l2", l2},
                              {"tau", h / (l1 + l2)},
                              {"u", l1 / l2}},
                             lam, kPi * kPi / area, bar);
    if (r.rigidity_fired)
      r.rigidity_shape_ok =
          std::abs(l1 / l2 - 1.0) <= 0.01 && std::abs(h / (l1 + l2) - 1.0) <= 0.01;
    rep.instances[i] = std::move(r);
  });
  return rep;
}

VerificationReport check_symmetrization(const TriangleParams& tri,
                                        const VerifyOptions& opt) {
  const ShapeSpec shape = triangle_from_params(tri);
  const ShapeSpec kite = fold_along_longest(shape);
  const BoundaryCondition bc_tri{{"M", "S"}};
  const BoundaryCondition bc_kite{kite.side_labels};

  const Spectrum sp_tri =
      solve_mixed(shape, bc_tri, 1, opt.level_lo, opt.level_hi, opt.tol);
  const Spectrum sp_kite =
      solve_mixed(kite, bc_kite, 1, opt.level_lo, opt.level_hi, opt.tol);

  // Discrete identity: the symmetric extension of the triangle eigenvector
  // across the fold has the same Rayleigh quotient on the doubled mesh.
  nlohmann::json identity = nlohmann::json::array();
  Mesh mesh = triangulate(shape, opt.level_lo);
  for (int lev = opt.level_lo; lev <= opt.level_hi; ++lev) {
    if (lev > opt.level_lo) mesh = refine(mesh);
    const AssembledSystem sys_t = assemble(mesh, bc_tri);
    const DiscreteSpectrum ds = smallest_eigs(sys_t, 1, opt.tol);
    const MirrorResult mr = mirror_union(mesh, "L", "*");
    const AssembledSystem sys_q =
        assemble(mr.mesh, BoundaryCondition{{"M", "S", "M*", "S*"}});
    Eigen::VectorXd xq = Eigen::VectorXd::Zero(sys_q.dim());
    for (int node = 0; node < mesh.node_count(); ++node) {
      const int ft = sys_t.free_of_node[node];
      if (ft < 0) continue;
      if (const int fq = sys_q.free_of_node[node]; fq >= 0) xq[fq] = ds.vectors(ft, 0);
      if (const int fm = sys_q.free_of_node[mr.node_map[node]]; fm >= 0)
        xq[fm] = ds.vectors(ft, 0);
    }
    const double rq = rayleigh_quotient(sys_q, xq);
    const double rel = std::abs(rq - ds.values[0]) / ds.values[0];
    identity.push_back({{"level", lev},
                        {"lambda_triangle", ds.values[0]},
                        {"rayleigh_quotient", rq},
                        {"rel_err", rel},
                        {"identity_ok", rel <= 1e-12}});
  }

  VerificationReport rep;
  rep.check = "symmetrization";
  {
    nlohmann::json params = triangle_params_json(tri);
    params["relation"] = "fold-identity";
    InstanceResult r = judge(std::move(params), sp_tri.values[0], sp_kite.values[0],
                             sp_tri.error_bars[0] + sp_kite.error_bars[0]);
    r.rigidity_shape_ok = true;  // equality is expected for every triangle
    rep.instances.push_back(std::move(r));
  }
  {
    nlohmann::json params = triangle_params_json(tri);
    params["relation"] = "kite-area-bound";
    const double kite_area = kite.area();
    InstanceResult r = judge(std::move(params), sp_kite.values[0],
                             2.0 * kPi * kPi / kite_area, sp_kite.error_bars[0]);
    if (r.rigidity_fired) r.rigidity_shape_ok = is_isosceles_right(tri);
    rep.instances.push_back(std::move(r));
  }
  rep.extra = {{"identity", identity}, {"kite_area", kite.area()}};
  return rep;
}

// --- minimization ------------------------------------------------------------

FamilyKind family_from_string(const std::string& s) {
  if (s == "triangles") return FamilyKind::Triangles;
  if (s == "right-trapezoids") return FamilyKind::RightTrapezoids;
  if (s == "rectangles") return FamilyKind::Rectangles;
  fail("unknown shape family '" + s +
       "'; expected triangles, right-trapezoids, or rectangles");
}

namespace {

std::string family_name(FamilyKind f) {
  switch (f) {
    case FamilyKind::Triangles: return "triangles";
    case FamilyKind::RightTrapezoids: return "right-trapezoids";
    case FamilyKind::Rectangles: return "rectangles";
  }
  return "?";
}

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0;
  int evals = 0;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, double step, int max_evals) {
  const int n = static_cast<int>(x0.size());
  struct P {
    std::vector<double> x;
    double fx;
  };
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  std::vector<P> s;
  s.push_back({x0, eval(x0)});
  for (int i = 0; i < n; ++i) {
    auto x = x0;
    x[i] += step;
    s.push_back({x, eval(x)});
  }
  auto by_fx = [](const P& a, const P& b) { return a.fx < b.fx; };

  while (evals < max_evals) {
    std::sort(s.begin(), s.end(), by_fx);
    double diam = 0;
    for (int i = 1; i <= n; ++i)
      for (int d = 0; d < n; ++d) diam = std::max(diam, std::abs(s[i].x[d] - s[0].x[d]));
    if (s[n].fx - s[0].fx <= 1e-10 * (std::abs(s[0].fx) + 1e-12) && diam <= 1e-6)
      break;

    std::vector<double> c(n, 0.0);  // centroid of all but the worst point
    for (int i = 0; i < n; ++i)
      for (int d = 0; d < n; ++d) c[d] += s[i].x[d] / n;
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (int d = 0; d < n; ++d) x[d] = c[d] + t * (s[n].x[d] - c[d]);
      return x;
    };

    const auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < s[0].fx) {
      const auto xe = along(-2.0);
      const double fe = eval(xe);
      s[n] = fe < fr ? P{xe, fe} : P{xr, fr};
    } else if (fr < s[n - 1].fx) {
      s[n] = {xr, fr};
    } else {
      const bool outside = fr < s[n].fx;
      const auto xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < std::min(fr, s[n].fx)) {
        s[n] = {xc, fc};
      } else {
        for (int i = 1; i <= n; ++i) {
          for (int d = 0; d < n; ++d) s[i].x[d] = s[0].x[d] + 0.5 * (s[i].x[d] - s[0].x[d]);
          s[i].fx = eval(s[i].x);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), by_fx);
  return {s[0].x, s[0].fx, evals};
}

}  // namespace

Functional Functional::parse(const std::string& text) {
  const std::string prefix = "lambda";
  if (text.rfind(prefix, 0) != 0)
    fail("functional must look like lambda<k>-<SIDES>, e.g. lambda1-MS");
  const std::size_t dash = text.find('-', prefix.size());
  if (dash == std::string::npos || dash == prefix.size() || dash + 1 == text.size())
    fail("functional must look like lambda<k>-<SIDES>, e.g. lambda1-MS");
  Functional f;
  f.index = 0;
  for (std::size_t i = prefix.size(); i < dash; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      fail("functional index must be a positive integer");
    f.index = f.index * 10 + (text[i] - '0');
  }
  if (f.index < 1) fail("functional index must be a positive integer");
  f.dirichlet = text.substr(dash + 1);
  return f;
}

BoundaryCondition Functional::boundary_for(const ShapeSpec& shape) const {
  BoundaryCondition bc;
  if (dirichlet == "all") {
    bc.dirichlet = shape.side_labels;
  } else if (dirichlet.find(',') != std::string::npos) {
    bc = BoundaryCondition::parse(dirichlet);
  } else {
    // Greedy longest-label tokenization, e.g. "l1l2w1" or "MS".
    std::size_t pos = 0;
    while (pos < dirichlet.size()) {
      std::string best;
      for (const auto& lab : shape.side_labels)
        if (lab.size() > best.size() && dirichlet.compare(pos, lab.size(), lab) == 0)
          best = lab;
      if (best.empty())
        fail("cannot resolve '" + dirichlet + "' against side labels of the shape");
      bc.dirichlet.push_back(best);
      pos += best.size();
    }
  }
  bc.validate_for(shape);
  if (bc.empty()) fail("the functional needs at least one Dirichlet side");
  return bc;
}

MinimizeResult minimize_functional(FamilyKind family, const Functional& f, double area,
                                   const VerifyOptions& opt) {
  if (!(area > 0)) fail("area must be positive");

  std::function<ShapeSpec(const std::vector<double>&)> build;
  std::vector<std::vector<double>> starts;
  switch (family) {
    case FamilyKind::Triangles:
      // p = (apex angle, log of the m/s ratio, sign-symmetric).
      build = [area](const std::vector<double>& p) {
        const double alpha = p[0];
        const double lr = std::abs(p[1]);
        if (!(alpha > kPi / 3 + 1e-9) || !(alpha < kPi - 1e-3) || lr > std::log(50.0))
          fail("outside the triangle family domain");
        const double r = std::exp(lr);
        const double ms = 2.0 * area / std::sin(alpha);
        const double m = std::sqrt(ms * r);
        return triangle_from_params(TriangleParams::from_sides_angle(m, m / r, alpha));
      };
      starts = {{1.9, 0.9}, {1.2, 0.3}, {2.4, 1.2}, {1.6, -0.8}, {2.0, 0.1}};
      break;
    case FamilyKind::RightTrapezoids:
      // p = (a, b): parallel-side ratio u = exp(-|a|) <= 1, tau = exp(b).
      build = [area](const std::vector<double>& p) {
        if (std::abs(p[0]) > 6.0 || std::abs(p[1]) > 3.0)
          fail("outside the right-trapezoid family domain");
        const double u = std::exp(-std::abs(p[0]));
        const double tau = std::exp(p[1]);
        const double l2 = std::sqrt(2.0 * area / tau) / (1.0 + u);
        return right_trapezoid(u * l2, l2, std::sqrt(2.0 * area * tau));
      };
      starts = {{0.7, 0.5}, {-0.9, -0.4}, {0.2, 1.0}, {1.2, -0.9}, {-0.4, 0.2}};
      break;
    case FamilyKind::Rectangles:
      // p = (log aspect).
      build = [area](const std::vector<double>& p) {
        if (std::abs(p[0]) > 4.0) fail("outside the rectangle family domain");
        const double a = std::sqrt(area) * std::exp(p[0]);
        return rectangle_shape(a, area / a);
      };
      starts = {{0.8}, {-0.8}, {0.3}, {1.5}, {-1.5}};
      break;
  }

  auto objective = [&](const std::vector<double>& p) -> double {
    try {
      const ShapeSpec shape = build(p);
      const BoundaryCondition bc = f.boundary_for(shape);
      const Spectrum sp =
          solve_mixed(shape, bc, f.index, opt.level_lo, opt.level_hi, opt.tol);
      return sp.values[f.index - 1];
    } catch (const std::invalid_argument&) {
      return 1e100;  // domain penalty; solver failures still propagate
    }
  };

  MinimizeResult out;
  out.family = family;
  out.area = area;
  for (const auto& s0 : starts) {
    const NelderMeadResult nm = nelder_mead(objective, s0, 0.25, 220);
    out.restarts.push_back({s0, nm.x, nm.fx, nm.evals});
  }
  std::size_t bi = 0;
  for (std::size_t i = 1; i < out.restarts.size(); ++i)
    if (out.restarts[i].value < out.restarts[bi].value) bi = i;
  out.best_params = out.restarts[bi].best;
  out.best_value = out.restarts[bi].value;
  out.best_shape = build(out.best_params);
  double worst = 0;
  for (const auto& r : out.restarts)
    worst = std::max(worst, std::abs(r.value - out.best_value));
  out.restart_spread = worst / std::max(std::abs(out.best_value), 1e-300);
  out.converged = out.restart_spread <= 5e-3;
  return out;
}

nlohmann::json MinimizeResult::to_json() const {
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : restarts)
    rs.push_back({{"start", r.start},
                  {"best", r.best},
                  {"value", r.value},
                  {"evaluations", r.evaluations}});
  return {{"family", family_name(family)},
          {"area", area},
          {"best_params", best_params},
          {"best_value", best_value},
          {"best_shape", best_shape.to_json()},
          {"restart_spread", restart_spread},
          {"converged", converged},
          {"restarts", rs}};
}

}  // namespace specpoly
