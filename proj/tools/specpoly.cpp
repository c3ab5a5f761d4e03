// specpoly: mixed Dirichlet-Neumann Laplacian eigenvalues on triangles,
// trapezoids, and rectangles, with inequality verification sweeps.
//
// Exit codes: 0 success (and, for `verify`, no violated instance);
// 1 a verify run found violated instances; 2 invalid input or configuration;
// 3 eigensolver failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "specpoly/verify.hpp"

namespace {

using namespace specpoly;

constexpr double kPi = 3.14159265358979323846;

std::string fmt15(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.15g", v);
  return b;
}

struct OutputTarget {
  std::string path;  // empty = stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << "\n";
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file " + path);
    f << text;
  }
};

std::map<std::string, double> parse_kv(const std::string& text,
                                       const std::vector<std::string>& allowed) {
  std::map<std::string, double> kv;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      std::string msg = "unknown parameter '" + key + "'; expected one of:";
      for (const auto& a : allowed) msg += " " + a;
      throw std::invalid_argument(msg);
    }
    std::size_t used = 0;
    const std::string vtext = tok.substr(eq + 1);
    double v = 0;
    try {
      v = std::stod(vtext, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse number '" + vtext + "'");
    }
    if (used != vtext.size())
      throw std::invalid_argument("cannot parse number '" + vtext + "'");
    kv[key] = v;
  }
  return kv;
}

double require_kv(const std::map<std::string, double>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("missing parameter '" + key + "'");
  return it->second;
}

ShapeSpec triangle_from_text(const std::string& text) {
  const auto kv = parse_kv(text, {"m", "s", "alpha"});
  return triangle_from_params(TriangleParams::from_sides_angle(
      require_kv(kv, "m"), require_kv(kv, "s"), require_kv(kv, "alpha")));
}

ShapeSpec trapezoid_from_text(const std::string& text) {
  const auto kv = parse_kv(text, {"p1", "p2", "h", "offset"});
  TrapezoidParams p;
  p.p1 = require_kv(kv, "p1");
  p.p2 = require_kv(kv, "p2");
  p.h = require_kv(kv, "h");
  // Default placement is isosceles; an explicit offset overrides it.
  p.top_offset = kv.count("offset") ? kv.at("offset") : 0.5 * (p.p2 - p.p1);
  return trapezoid_from_params(p);
}

ShapeSpec right_trapezoid_from_text(const std::string& text) {
  const auto kv = parse_kv(text, {"l1", "l2", "h"});
  return right_trapezoid(require_kv(kv, "l1"), require_kv(kv, "l2"),
                         require_kv(kv, "h"));
}

ShapeSpec rect_from_text(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos)
    throw std::invalid_argument("expected AxB, e.g. 2x1, got '" + text + "'");
  try {
    std::size_t ua = 0, ub = 0;
    const std::string sa = text.substr(0, x), sb = text.substr(x + 1);
    const double a = std::stod(sa, &ua), b = std::stod(sb, &ub);
    if (ua != sa.size() || ub != sb.size()) throw std::invalid_argument("");
    return rectangle_shape(a, b);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected AxB, e.g. 2x1, got '" + text + "'");
  }
}

ShapeSpec shape_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open shape file " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed shape file " + path + ": " + e.what());
  }
  return ShapeSpec::from_json(j);
}

std::pair<int, int> parse_levels(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos)
    throw std::invalid_argument("expected LO..HI, e.g. 3..6, got '" + text + "'");
  try {
    std::size_t ua = 0, ub = 0;
    const std::string sa = text.substr(0, dots), sb = text.substr(dots + 2);
    const int lo = std::stoi(sa, &ua), hi = std::stoi(sb, &ub);
    if (ua != sa.size() || ub != sb.size()) throw std::invalid_argument("");
    return {lo, hi};
  } catch (const std::exception&) {
    throw std::invalid_argument("expected LO..HI, e.g. 3..6, got '" + text + "'");
  }
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos)
    throw std::invalid_argument("expected NxM, e.g. 10x10, got '" + text + "'");
  try {
    std::size_t ua = 0, ub = 0;
    const std::string sa = text.substr(0, x), sb = text.substr(x + 1);
    const int a = std::stoi(sa, &ua), b = std::stoi(sb, &ub);
    if (ua != sa.size() || ub != sb.size() || a < 1 || b < 1)
      throw std::invalid_argument("");
    return {a, b};
  } catch (const std::exception&) {
    throw std::invalid_argument("expected NxM, e.g. 10x10, got '" + text + "'");
  }
}

void check_tolerance(double tol) {
  if (!(tol > 0) || tol > 1e-3)
    throw std::invalid_argument("tolerance must lie in (0, 1e-3]");
}

// Shape selection flags shared by solve and mesh-dump.
struct ShapeFlags {
  std::string triangle, trapezoid, right_trap, rect, file;

  void attach(CLI::App* cmd) {
    auto* g = cmd->add_option_group("shape", "exactly one shape");
    g->add_option("--triangle", triangle, "m=..,s=..,alpha=.. (radians)");
    g->add_option("--trapezoid", trapezoid, "p1=..,p2=..,h=..[,offset=..]");
    g->add_option("--right-trapezoid", right_trap, "l1=..,l2=..,h=..");
    g->add_option("--rect", rect, "AxB, e.g. 2x1");
    g->add_option("--shape", file, "path to a shape JSON file");
    g->require_option(1);
  }

  ShapeSpec build() const {
    if (!triangle.empty()) return triangle_from_text(triangle);
    if (!trapezoid.empty()) return trapezoid_from_text(trapezoid);
    if (!right_trap.empty()) return right_trapezoid_from_text(right_trap);
    if (!rect.empty()) return rect_from_text(rect);
    return shape_from_file(file);
  }
};

int run_solve(const ShapeFlags& flags, const std::string& dirichlet, int k,
              const std::string& levels, double tol, const std::string& format,
              const OutputTarget& out) {
  check_tolerance(tol);
  const ShapeSpec shape = flags.build();
  const auto [lo, hi] = parse_levels(levels);
  const BoundaryCondition bc = BoundaryCondition::parse(dirichlet);
  const Spectrum sp = bc.empty() ? solve_neumann(shape, k, lo, hi, tol)
                                 : solve_mixed(shape, bc, k, lo, hi, tol);
  if (format == "csv") {
    std::ostringstream ss;
    sp.write_csv(ss);
    out.write(ss.str());
  } else {
    out.write(sp.to_json().dump(2) + "\n");
  }
  return 0;
}

int run_verify(const std::string& check, const std::string& grid_text, double area,
               bool area_given, double alpha, int k, double m, double h,
               const std::string& triangle_text, const std::string& levels, double tol,
               int parallel, const std::string& format, const OutputTarget& out) {
  check_tolerance(tol);
  VerifyOptions opt;
  std::tie(opt.level_lo, opt.level_hi) = parse_levels(levels);
  opt.tol = tol;
  opt.parallelism = parallel;
  const auto [gx, gy] = parse_grid(grid_text);

  VerificationReport rep;
  if (check == "thm3") {
    rep = check_thm3_ordering(alpha, area, opt);
  } else if (check == "thm4") {
    rep = check_thm4(triangle_grid(area, gx, gy), opt);
  } else if (check == "thm5") {
    rep = check_thm5(right_triangle_grid(area, gx), opt);
  } else if (check == "thm6") {
    rep = check_thm6(triangle_grid(area, gx, gy), opt);
  } else if (check == "thm8") {
    rep = check_thm8(trapezoid_grid(m, h, gx, gy), k, opt);
  } else if (check == "thm9") {
    rep = check_thm9(right_trapezoid_grid(area_given ? area : 1.0, gx, gy), opt);
  } else if (check == "symmetrization") {
    const ShapeSpec tri = triangle_from_text(triangle_text);
    rep = check_symmetrization(params_of_triangle(tri), opt);
  } else if (check == "open2") {
    rep = explore_open_problem2(triangle_grid(area, gx, gy), opt);
  } else {
    throw std::invalid_argument(
        "unknown check '" + check +
        "'; expected thm3, thm4, thm5, thm6, thm8, thm9, symmetrization, or open2");
  }

  if (format == "csv") {
    std::ostringstream ss;
    rep.write_csv(ss);
    out.write(ss.str());
  } else {
    out.write(rep.to_json().dump(2) + "\n");
  }
  return rep.violations() > 0 ? 1 : 0;
}

int run_sweep(const std::string& family_text, const std::string& functional_text,
              double area, const std::string& grid_text, const std::string& levels,
              double tol, int parallel, const std::string& format,
              const OutputTarget& out) {
  check_tolerance(tol);
  const FamilyKind family = family_from_string(family_text);
  const Functional f = Functional::parse(functional_text);
  VerifyOptions opt;
  std::tie(opt.level_lo, opt.level_hi) = parse_levels(levels);
  opt.tol = tol;
  opt.parallelism = parallel;
  const auto [gx, gy] = parse_grid(grid_text);

  struct Row {
    nlohmann::json params;
    double value = 0, error = 0;
  };
  std::vector<ShapeSpec> shapes;
  std::vector<nlohmann::json> params;
  if (family == FamilyKind::Triangles) {
    for (const auto& p : triangle_grid(area, gx, gy)) {
      shapes.push_back(triangle_from_params(p));
      params.push_back({{"alpha", p.apex_angle},
                        {"area", p.area},
                        {"l", p.l},
                        {"m", p.m},
                        {"ratio_ms", p.ratio_ms()},
                        {"s", p.s}});
    }
  } else if (family == FamilyKind::RightTrapezoids) {
    for (const auto& [l1, l2, h] : right_trapezoid_grid(area, gx, gy)) {
      shapes.push_back(right_trapezoid(l1, l2, h));
      params.push_back({{"h", h}, {"l1", l1}, {"l2", l2}});
    }
  } else {
    for (const double la : linspace_through(std::log(0.25), std::log(4.0), gx, 0.0)) {
      const double a = std::sqrt(area) * std::exp(0.5 * la);
      shapes.push_back(rectangle_shape(a, area / a));
      params.push_back({{"a", a}, {"aspect", std::exp(la)}, {"b", area / a}});
    }
  }

  std::vector<Row> rows(shapes.size());
  std::vector<std::exception_ptr> errs(shapes.size());
  // Sequential: each solve already saturates little; sweeps are small. The
  // verify checks carry the parallel path.
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const BoundaryCondition bc = f.boundary_for(shapes[i]);
    const Spectrum sp =
        solve_mixed(shapes[i], bc, f.index, opt.level_lo, opt.level_hi, opt.tol);
    rows[i] = {params[i], sp.values[f.index - 1], sp.error_bars[f.index - 1]};
  }

  if (format == "csv") {
    std::ostringstream ss;
    if (!rows.empty()) {
      for (auto it = rows[0].params.begin(); it != rows[0].params.end(); ++it)
        ss << it.key() << ",";
      ss << "value,error_bar\n";
      for (const auto& r : rows) {
        for (auto it = r.params.begin(); it != r.params.end(); ++it)
          ss << fmt15(it.value().get<double>()) << ",";
        ss << fmt15(r.value) << "," << fmt15(r.error) << "\n";
      }
    }
    out.write(ss.str());
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
      arr.push_back(
          {{"params", r.params}, {"value", r.value}, {"error_bar", r.error}});
    out.write(arr.dump(2) + "\n");
  }
  return 0;
}

int run_minimize(const std::string& family_text, const std::string& functional_text,
                 double area, const std::string& levels, double tol,
                 const std::string& format, const OutputTarget& out) {
  check_tolerance(tol);
  const FamilyKind family = family_from_string(family_text);
  const Functional f = Functional::parse(functional_text);
  VerifyOptions opt;
  std::tie(opt.level_lo, opt.level_hi) = parse_levels(levels);
  opt.tol = tol;
  const MinimizeResult res = minimize_functional(family, f, area, opt);
  if (format == "csv") {
    std::ostringstream ss;
    ss << "restart,value,evaluations,best_params\n";
    for (std::size_t i = 0; i < res.restarts.size(); ++i) {
      const auto& r = res.restarts[i];
      ss << i << "," << fmt15(r.value) << "," << r.evaluations << ",";
      for (std::size_t d = 0; d < r.best.size(); ++d)
        ss << (d ? ";" : "") << fmt15(r.best[d]);
      ss << "\n";
    }
    out.write(ss.str());
  } else {
    out.write(res.to_json().dump(2) + "\n");
  }
  return 0;
}

int run_closed_form(const std::vector<std::string>& args,
                    const std::string& triangle_text, const std::string& format,
                    const OutputTarget& out) {
  auto num = [&](std::size_t i) -> double {
    if (i >= args.size()) throw std::invalid_argument("missing numeric argument");
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(args[i], &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse number '" + args[i] + "'");
    }
    if (used != args[i].size())
      throw std::invalid_argument("cannot parse number '" + args[i] + "'");
    return v;
  };
  auto emit_scalar = [&](const std::string& name, double v) {
    if (format == "csv")
      out.write(name + "," + fmt15(v) + "\n");
    else
      out.write(nlohmann::json{{name, v}}.dump(2) + "\n");
  };

  if (args.empty())
    throw std::invalid_argument(
        "closed-form needs a kind: rect, count-below, M, counting, cylinder, "
        "polya, or bounds");
  const std::string& kind = args[0];

  if (kind == "rect") {
    if (args.size() != 6)
      throw std::invalid_argument("usage: closed-form rect A B PX PY COUNT");
    const double a = num(1), b = num(2);
    const AxisPattern px = axis_pattern_from_string(args[3]);
    const AxisPattern py = axis_pattern_from_string(args[4]);
    const int count = static_cast<int>(num(5));
    const auto vals = rectangle_spectrum(a, b, px, py, count);
    if (format == "csv") {
      std::ostringstream ss;
      ss << "index,value\n";
      for (std::size_t i = 0; i < vals.size(); ++i)
        ss << (i + 1) << "," << fmt15(vals[i]) << "\n";
      out.write(ss.str());
    } else {
      out.write(nlohmann::json{{"values", vals}}.dump(2) + "\n");
    }
    return 0;
  }
  if (kind == "count-below") {
    if (args.size() != 4)
      throw std::invalid_argument("usage: closed-form count-below A B LAMBDA");
    emit_scalar("count", static_cast<double>(rectangle_count_below(num(1), num(2), num(3))));
    return 0;
  }
  if (kind == "M") {
    if (args.size() != 2) throw std::invalid_argument("usage: closed-form M X");
    emit_scalar("M", counting_inverse_m(num(1)));
    return 0;
  }
  if (kind == "counting") {
    if (args.size() != 2) throw std::invalid_argument("usage: closed-form counting Y");
    emit_scalar("counting_x", counting_x(num(1)));
    return 0;
  }
  if (kind == "cylinder") {
    if (args.size() != 3)
      throw std::invalid_argument("usage: closed-form cylinder L H");
    emit_scalar("mu2", cylinder_mu2(num(1), num(2)));
    return 0;
  }
  if (kind == "polya") {
    if (args.size() != 4)
      throw std::invalid_argument("usage: closed-form polya K H M");
    emit_scalar("bound", polya_lower_bound(static_cast<int>(num(1)), num(2), num(3)));
    return 0;
  }
  if (kind == "bounds") {
    if (triangle_text.empty())
      throw std::invalid_argument(
          "closed-form bounds needs --triangle m=..,s=..,alpha=..");
    const ShapeSpec tri = triangle_from_text(triangle_text);
    const TriangleParams p = params_of_triangle(tri);
    const TriangleBounds b = triangle_bounds(p);
    const std::string sharper = b.sharper == TriangleBounds::Sharper::Area    ? "area"
                                : b.sharper == TriangleBounds::Sharper::Side ? "side"
                                                                             : "tie";
    if (format == "csv") {
      std::ostringstream ss;
      ss << "name,value\n";
      ss << "area," << fmt15(p.area) << "\n";
      ss << "four_area," << fmt15(4.0 * p.area) << "\n";
      ss << "l_squared," << fmt15(p.l * p.l) << "\n";
      ss << "area_bound," << fmt15(b.area_bound) << "\n";
      ss << "side_bound," << fmt15(b.side_bound) << "\n";
      ss << "sharper," << sharper << "\n";
      out.write(ss.str());
    } else {
      out.write(nlohmann::json{{"area", p.area},
                               {"four_area", 4.0 * p.area},
                               {"l_squared", p.l * p.l},
                               {"area_bound", b.area_bound},
                               {"side_bound", b.side_bound},
                               {"sharper", sharper}}
                    .dump(2) +
                "\n");
    }
    return 0;
  }
  throw std::invalid_argument("unknown closed-form kind '" + kind + "'");
}

int run_mesh_dump(const ShapeFlags& flags, int level, const std::string& format,
                  const OutputTarget& out) {
  const Mesh mesh = triangulate(flags.build(), level);
  if (format == "json") {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& p : mesh.nodes) nodes.push_back({p.x(), p.y()});
    nlohmann::json elems = nlohmann::json::array();
    for (const auto& el : mesh.elements) elems.push_back({el[0], el[1], el[2]});
    out.write(nlohmann::json{{"nodes", nodes}, {"elements", elems}}.dump(2) + "\n");
  } else {
    std::ostringstream ss;
    dump_text(mesh, ss);
    out.write(ss.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixed Dirichlet-Neumann Laplacian eigenvalues on planar polygons"};
  app.require_subcommand(1);

  std::string format = "json", out_path, levels = "3..6";
  double tol = 1e-10;
  int parallel = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->envname("SPECPOLY_FORMAT")
        ->capture_default_str();
    cmd->add_option("--out", out_path, "output path (default: stdout)")
        ->envname("SPECPOLY_OUT");
  };
  auto add_solver_opts = [&](CLI::App* cmd) {
    cmd->add_option("--levels", levels, "refinement range LO..HI")
        ->envname("SPECPOLY_LEVELS")
        ->capture_default_str();
    cmd->add_option("--tol", tol, "eigensolver residual tolerance, in (0, 1e-3]")
        ->envname("SPECPOLY_TOL")
        ->capture_default_str();
  };

  // solve
  auto* solve = app.add_subcommand("solve", "eigenvalues of one shape");
  ShapeFlags solve_shape;
  solve_shape.attach(solve);
  std::string dirichlet;
  int k = 1;
  solve->add_option("--dirichlet", dirichlet,
                    "comma-separated Dirichlet side labels (empty: pure Neumann)");
  solve->add_option("--k", k, "number of eigenvalues")->capture_default_str();
  add_solver_opts(solve);
  add_common(solve);

  // verify
  auto* verify = app.add_subcommand("verify", "run an inequality check");
  // long-form help only: the default -h short flag would collide with --h
  verify->set_help_flag("--help", "print this help message and exit");
  std::string check, grid_text = "10x10", vtriangle = "m=1,s=1,alpha=1.5707963267948966";
  double area = 0.5, alpha = 0.6, vm = 2.0, vh = 1.0;
  int vk = 1;
  verify->add_option("check", check,
                     "thm3|thm4|thm5|thm6|thm8|thm9|symmetrization|open2")
      ->required();
  verify->add_option("--grid", grid_text, "instance grid NxM")->capture_default_str();
  auto* area_opt = verify->add_option("--area", area, "shape area")->capture_default_str();
  verify->add_option("--alpha", alpha, "smallest angle (thm3), radians")
      ->capture_default_str();
  verify->add_option("--k", vk, "eigenvalue index (thm8)")->capture_default_str();
  verify->add_option("--m", vm, "mean width (thm8)")->capture_default_str();
  verify->add_option("--h", vh, "height (thm8)")->capture_default_str();
  verify->add_option("--triangle", vtriangle, "triangle for symmetrization")
      ->capture_default_str();
  verify->add_option("--parallel", parallel, "worker threads (0: all cores)")
      ->envname("SPECPOLY_PARALLEL")
      ->capture_default_str();
  add_solver_opts(verify);
  add_common(verify);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "grid sweep of one functional");
  std::string family = "triangles", functional = "lambda1-MS";
  sweep->add_option("--family", family, "triangles|right-trapezoids|rectangles")
      ->capture_default_str();
  sweep->add_option("--functional", functional, "e.g. lambda1-MS")
      ->capture_default_str();
  sweep->add_option("--area", area, "shape area")->capture_default_str();
  sweep->add_option("--grid", grid_text, "instance grid NxM")->capture_default_str();
  sweep->add_option("--parallel", parallel, "worker threads (0: all cores)")
      ->capture_default_str();
  add_solver_opts(sweep);
  add_common(sweep);

  // minimize
  auto* minimize = app.add_subcommand("minimize", "minimize a functional over a family");
  std::string min_levels = "3..5";
  minimize->add_option("--family", family, "triangles|right-trapezoids|rectangles")
      ->capture_default_str();
  minimize->add_option("--functional", functional, "e.g. lambda1-MS")
      ->capture_default_str();
  minimize->add_option("--area", area, "shape area")->capture_default_str();
  minimize->add_option("--levels", min_levels, "refinement range LO..HI")
      ->capture_default_str();
  minimize->add_option("--tol", tol, "eigensolver residual tolerance")
      ->capture_default_str();
  add_common(minimize);

  // closed-form
  auto* closed = app.add_subcommand("closed-form", "exact formula evaluations");
  std::vector<std::string> cf_args;
  std::string cf_triangle;
  closed->add_option("args", cf_args,
                     "rect A B PX PY COUNT | count-below A B LAMBDA | M X | "
                     "counting Y | cylinder L H | polya K H M | bounds");
  closed->add_option("--triangle", cf_triangle, "triangle for `bounds`");
  add_common(closed);

  // mesh-dump
  auto* meshdump = app.add_subcommand("mesh-dump", "triangulation of one shape");
  ShapeFlags mesh_shape;
  mesh_shape.attach(meshdump);
  int level = 0;
  meshdump->add_option("--level", level, "refinement level")->capture_default_str();
  add_common(meshdump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  const OutputTarget out{out_path};
  try {
    if (*solve)
      return run_solve(solve_shape, dirichlet, k, levels, tol, format, out);
    if (*verify)
      return run_verify(check, grid_text, area, area_opt->count() > 0, alpha, vk, vm,
                        vh, vtriangle, levels, tol, parallel, format, out);
    if (*sweep)
      return run_sweep(family, functional, area, grid_text, levels, tol, parallel,
                       format, out);
    if (*minimize)
      return run_minimize(family, functional, area, min_levels, tol, format, out);
    if (*closed) return run_closed_form(cf_args, cf_triangle, format, out);
    if (*meshdump) return run_mesh_dump(mesh_shape, level, format, out);
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
