#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "specpoly/verify.hpp"

using namespace specpoly;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kPi2 = kPi * kPi;

const VerifyOptions kFast{3, 5, 1e-10, 0};

const InstanceResult* find_instance(
    const VerificationReport& rep,
    const std::function<bool(const InstanceResult&)>& pred) {
  for (const auto& ins : rep.instances)
    if (pred(ins)) return &ins;
  return nullptr;
}

bool near(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}
}  // namespace

TEST_CASE("anchored linspace hits the anchor exactly") {
  const auto v = linspace_through(0.0, 1.0, 5, 0.3);
  REQUIRE(v.size() == 5);
  CHECK(v[1] == 0.3);  // bitwise
  for (int i = 1; i < 5; ++i)
    CHECK(v[i] - v[i - 1] == doctest::Approx(0.25).epsilon(1e-12));

  const auto exact = linspace_through(0.0, 1.0, 3, 0.5);
  CHECK(exact[0] == 0.0);
  CHECK(exact[1] == 0.5);
  CHECK(exact[2] == 1.0);

  CHECK(linspace_through(2.0, 9.0, 1, 4.0) == std::vector<double>{4.0});
  CHECK_THROWS_AS(linspace_through(0.0, 1.0, 3, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(linspace_through(0.0, 1.0, 0, 0.5), std::invalid_argument);
}

TEST_CASE("shape grids contain their anchor shapes") {
  const auto tris = triangle_grid(0.5, 10, 3);
  CHECK(tris.size() == 30);  // the default 10-point angle range needs no shift
  bool has_iso_right = false;
  for (const auto& p : tris) {
    CHECK(p.area == doctest::Approx(0.5).epsilon(1e-12));
    if (std::abs(p.apex_angle - kPi / 2) < 1e-12 && std::abs(p.ratio_ms() - 1) < 1e-12)
      has_iso_right = true;
  }
  CHECK(has_iso_right);

  // an anchor shift that would leave the constructible angle range instead
  // drops the offending row (5 points shift the low end below pi/3)
  const auto shifted = triangle_grid(0.5, 5, 3);
  CHECK(shifted.size() == 12);
  CHECK(std::any_of(shifted.begin(), shifted.end(), [](const TriangleParams& p) {
    return std::abs(p.apex_angle - kPi / 2) < 1e-12 && std::abs(p.ratio_ms() - 1) < 1e-12;
  }));

  const auto rights = right_triangle_grid(0.5, 5);
  CHECK(rights.size() == 5);
  for (const auto& p : rights) CHECK(std::abs(p.apex_angle - kPi / 2) < 1e-9);
  CHECK(std::any_of(rights.begin(), rights.end(), [](const TriangleParams& p) {
    return std::abs(p.m - 1.0) < 1e-12 && std::abs(p.s - 1.0) < 1e-12;
  }));

  const auto traps = trapezoid_grid(2.0, 1.0, 3, 3);
  CHECK(traps.size() == 9);
  bool has_rect = false;
  for (const auto& t : traps) {
    CHECK(t.mean_width() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(t.h == 1.0);
    if (t.p1 == 2.0 && t.p2 == 2.0 && t.top_offset == 0.0) has_rect = true;
  }
  CHECK(has_rect);

  const auto rts = right_trapezoid_grid(1.0, 3, 3);
  CHECK(rts.size() == 9);
  bool has_square_like = false;
  for (const auto& [l1, l2, h] : rts) {
    CHECK(0.5 * (l1 + l2) * h == doctest::Approx(1.0).epsilon(1e-12));
    if (std::abs(l1 / l2 - 1.0) < 1e-12 && std::abs(h / (l1 + l2) - 1.0) < 1e-12)
      has_square_like = true;
  }
  CHECK(has_square_like);
}

TEST_CASE("area lower bound holds on a small triangle grid") {
  const auto grid = triangle_grid(0.5, 3, 3);
  const auto rep = check_thm4(grid, kFast);
  CHECK(rep.check == "thm4");
  REQUIRE(rep.instances.size() == grid.size());
  CHECK(rep.violations() == 0);
  CHECK(rep.aggregate() != "violated");

  for (const auto& ins : rep.instances) {
    CHECK(ins.bound == doctest::Approx(2 * kPi2).epsilon(1e-9));
    CHECK(ins.computed + ins.error_bar >= ins.bound);
    CHECK(ins.margin == ins.computed - ins.bound);
  }

  const auto* iso = find_instance(rep, [](const InstanceResult& r) {
    return std::abs(r.params.at("alpha").get<double>() - kPi / 2) < 1e-9 &&
           std::abs(r.params.at("ratio_ms").get<double>() - 1.0) < 1e-9;
  });
  REQUIRE(iso != nullptr);
  CHECK(iso->rigidity_fired);
  CHECK(iso->rigidity_shape_ok);
  CHECK(near(iso->computed, 2 * kPi2, 2e-3));

  // a clearly non-extremal instance holds with real margin
  const auto* far = find_instance(rep, [](const InstanceResult& r) {
    return r.params.at("ratio_ms").get<double>() > 3.0;
  });
  REQUIRE(far != nullptr);
  CHECK(far->verdict == Verdict::Holds);
  CHECK(far->margin > 0.05 * far->bound);

  // serialization shape
  const auto j = rep.to_json();
  CHECK(j.at("check") == "thm4");
  CHECK(j.at("instances").size() == grid.size());
  CHECK(j.at("violations").get<int>() == 0);
  std::ostringstream csv;
  rep.write_csv(csv);
  const std::string text = csv.str();
  CHECK(text.rfind("alpha,area,l,m,ratio_ms,s,computed,bound,margin,error_bar,verdict,"
                   "rigidity_fired,rigidity_shape_ok\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(grid.size()) + 1);
}

TEST_CASE("hypotenuse bound with the Neumann cross-check") {
  const auto grid = right_triangle_grid(0.5, 3);
  const auto rep = check_thm5(grid, kFast);
  CHECK(rep.check == "thm5");
  REQUIRE(rep.instances.size() == 3);
  CHECK(rep.violations() == 0);

  const auto* iso = find_instance(rep, [](const InstanceResult& r) {
    return std::abs(r.params.at("ratio_ms").get<double>() - 1.0) < 1e-9;
  });
  REQUIRE(iso != nullptr);
  CHECK(iso->bound == doctest::Approx(kPi2).epsilon(1e-12));
  CHECK(near(iso->computed, kPi2, 2e-3));
  CHECK(iso->rigidity_fired);
  CHECK(iso->rigidity_shape_ok);
  // at the isosceles right triangle the hypotenuse eigenvalue meets mu_2
  const double mu2 = iso->extra.at("mu2").get<double>();
  const double mu2_err = iso->extra.at("mu2_error").get<double>();
  CHECK(near(mu2, kPi2, 2e-3));
  CHECK(std::abs(iso->computed - mu2) <= iso->error_bar + mu2_err + 1e-9);

  // the check refuses non-right triangles
  const std::vector<TriangleParams> bad = {
      TriangleParams::from_sides_angle(1.2, 1.0, 1.8)};
  CHECK_THROWS_AS(check_thm5(bad, kFast), std::invalid_argument);
}

TEST_CASE("side-length bound fails near the equilateral triangle") {
  // isosceles triangles of area 1/2 with apex just above pi/3: the inscribed
  // disk of the folded kite already beats 4 pi^2 / l^2, so these must come out
  // Violated — and the per-instance cylinder form must still hold.
  std::vector<TriangleParams> grid;
  for (const double alpha : {1.06, 1.12, 1.18, 1.25}) {
    const double m = std::sqrt(1.0 / std::sin(alpha));
    grid.push_back(TriangleParams::from_sides_angle(m, m, alpha));
  }
  const auto rep = check_thm6(grid, kFast);
  CHECK(rep.check == "thm6");
  REQUIRE(rep.instances.size() == 4);
  CHECK(rep.violations() >= 3);
  CHECK(rep.aggregate() == "violated");
  for (const auto& ins : rep.instances) {
    CHECK(ins.extra.at("cylinder_holds").get<bool>());
    CHECK(ins.extra.at("cylinder_bound").get<double>() <= ins.bound + 1e-12);
  }
  CHECK(rep.extra.at("cylinder_bound_violations").get<int>() == 0);

  // at the isosceles right triangle the same bound is exact
  const std::vector<TriangleParams> iso = {
      TriangleParams::from_sides_angle(1.0, 1.0, kPi / 2)};
  const auto rep_iso = check_thm6(iso, kFast);
  CHECK(rep_iso.violations() == 0);
  CHECK(rep_iso.instances[0].bound == doctest::Approx(2 * kPi2).epsilon(1e-12));
  CHECK(rep_iso.instances[0].rigidity_fired);
  CHECK(rep_iso.instances[0].rigidity_shape_ok);
}

TEST_CASE("ordering chain at the isosceles-right endpoint") {
  const auto rep = check_thm3_ordering(kPi / 4, 0.5, kFast);
  CHECK(rep.check == "thm3");
  REQUIRE(rep.instances.size() == 8);
  CHECK(rep.violations() == 0);

  auto pair_verdict = [&](const std::string& pair) {
    const auto* ins = find_instance(rep, [&](const InstanceResult& r) {
      return r.params.at("pair").get<std::string>() == pair;
    });
    REQUIRE(ins != nullptr);
    return ins->verdict;
  };
  // legs of equal length: the two single-leg problems coincide, as do
  // mu_2 and the hypotenuse problem
  CHECK(pair_verdict("lambda1_S < lambda1_M") == Verdict::HoldsWithinError);
  CHECK(pair_verdict("mu2 < lambda1_L") == Verdict::HoldsWithinError);
  CHECK(pair_verdict("mu1 < lambda1_S") == Verdict::Holds);
  CHECK(pair_verdict("lambda1_L < lambda1_MS") == Verdict::Holds);

  // closed-form anchors for the isosceles right triangle with legs 1
  CHECK(near(rep.extra.at("mu2").get<double>(), kPi2, 5e-3));
  CHECK(near(rep.extra.at("lambda1_L").get<double>(), kPi2, 5e-3));
  CHECK(near(rep.extra.at("lambda1_MS").get<double>(), 2 * kPi2, 5e-3));
  CHECK(near(rep.extra.at("lambda1_LMS").get<double>(), 5 * kPi2, 5e-3));

  CHECK_THROWS_AS(check_thm3_ordering(1.0, 0.5, kFast), std::invalid_argument);
  CHECK_THROWS_AS(check_thm3_ordering(0.0, 0.5, kFast), std::invalid_argument);
}

TEST_CASE("single-side comparison survey") {
  const auto grid = triangle_grid(0.5, 2, 1, 1.3, 1.9, 1.0, 20.0);
  const auto rep = explore_open_problem2(grid, kFast);
  CHECK(rep.check == "open2");
  REQUIRE(rep.instances.size() == 3 * grid.size());
  CHECK(rep.violations() == 0);  // lambda1_S <= lambda1_M <= lambda1_L <= lambda1_MS
  for (const auto& ins : rep.instances) {
    const int rank = ins.extra.at("mu2_rank").get<int>();
    CHECK(rank >= 0);
    CHECK(rank <= 4);
    CHECK(ins.extra.at("mu2").get<double>() > 0);
  }
}

TEST_CASE("trapezoid eigenvalue bound and its closed-form cross-checks") {
  const auto grid = trapezoid_grid(2.0, 1.0, 3, 3);
  const auto rep = check_thm8(grid, 1, kFast);
  CHECK(rep.check == "thm8");
  REQUIRE(rep.instances.size() == 9);
  CHECK(rep.violations() == 0);
  CHECK(rep.extra.at("k").get<int>() == 1);

  for (const auto& ins : rep.instances) {
    CHECK(ins.bound == doctest::Approx(kPi2 / 4).epsilon(1e-12));
    CHECK(ins.extra.at("polya_bound").get<double>() ==
          doctest::Approx(ins.bound).epsilon(1e-13));
    CHECK(ins.extra.at("rect_value").get<double>() ==
          doctest::Approx(ins.bound).epsilon(1e-13));
  }

  const auto* rect = find_instance(rep, [](const InstanceResult& r) {
    return r.params.at("p1").get<double>() == 2.0 &&
           r.params.at("p2").get<double>() == 2.0 &&
           r.params.at("top_offset").get<double>() == 0.0;
  });
  REQUIRE(rect != nullptr);
  CHECK(rect->rigidity_fired);
  CHECK(rect->rigidity_shape_ok);
  CHECK(near(rect->computed, kPi2 / 4, 2e-3));

  // hypothesis guard: k = 2 needs h <= m/2
  const auto tall = trapezoid_grid(2.0, 1.5, 1, 1);
  CHECK_THROWS_AS(check_thm8(tall, 2, kFast), std::invalid_argument);
  CHECK_NOTHROW(void(check_thm8(tall, 1, kFast)));
}

TEST_CASE("right-trapezoid area bound") {
  const auto grid = right_trapezoid_grid(1.0, 3, 3);
  const auto rep = check_thm9(grid, kFast);
  CHECK(rep.check == "thm9");
  REQUIRE(rep.instances.size() == 9);
  CHECK(rep.violations() == 0);

  const auto* rect = find_instance(rep, [](const InstanceResult& r) {
    return std::abs(r.params.at("u").get<double>() - 1.0) < 1e-12 &&
           std::abs(r.params.at("tau").get<double>() - 1.0) < 1e-12;
  });
  REQUIRE(rect != nullptr);
  CHECK(rect->bound == doctest::Approx(kPi2).epsilon(1e-12));
  CHECK(rect->rigidity_fired);
  CHECK(rect->rigidity_shape_ok);
  CHECK(near(rect->computed, kPi2, 2e-3));
}

TEST_CASE("folding identity is exact in the discrete spaces") {
  // isosceles right triangle: the kite is the unit square, everything closed form
  const auto iso = TriangleParams::from_sides_angle(1.0, 1.0, kPi / 2);
  const auto rep = check_symmetrization(iso, kFast);
  CHECK(rep.check == "symmetrization");
  REQUIRE(rep.instances.size() == 2);
  CHECK(rep.violations() == 0);
  CHECK(rep.extra.at("kite_area").get<double>() == doctest::Approx(1.0).epsilon(1e-12));

  const auto* fold = find_instance(rep, [](const InstanceResult& r) {
    return r.params.at("relation") == "fold-identity";
  });
  REQUIRE(fold != nullptr);
  CHECK(fold->verdict == Verdict::HoldsWithinError);  // exact equality
  CHECK(fold->rigidity_shape_ok);
  CHECK(near(fold->computed, 2 * kPi2, 2e-3));

  const auto* kite = find_instance(rep, [](const InstanceResult& r) {
    return r.params.at("relation") == "kite-area-bound";
  });
  REQUIRE(kite != nullptr);
  CHECK(kite->bound == doctest::Approx(2 * kPi2).epsilon(1e-12));
  CHECK(kite->rigidity_fired);
  CHECK(kite->rigidity_shape_ok);

  const auto& identity = rep.extra.at("identity");
  REQUIRE(identity.size() == 3);  // levels 3..5
  for (const auto& row : identity) {
    CHECK(row.at("identity_ok").get<bool>());
    CHECK(row.at("rel_err").get<double>() <= 1e-12);
  }

  // the identity is mesh-level exact for scalene triangles too
  const auto scalene = TriangleParams::from_sides_angle(1.3, 0.9, 1.9);
  const auto rep2 = check_symmetrization(scalene, kFast);
  CHECK(rep2.violations() == 0);
  for (const auto& row : rep2.extra.at("identity"))
    CHECK(row.at("identity_ok").get<bool>());
  const auto* fold2 = find_instance(rep2, [](const InstanceResult& r) {
    return r.params.at("relation") == "fold-identity";
  });
  REQUIRE(fold2 != nullptr);
  CHECK(fold2->verdict == Verdict::HoldsWithinError);
}

TEST_CASE("functional parsing and label resolution") {
  const Functional f1 = Functional::parse("lambda1-MS");
  CHECK(f1.index == 1);
  CHECK(f1.dirichlet == "MS");
  const auto tri = triangle_from_params(TriangleParams::from_sides_angle(1, 1, kPi / 2));
  const auto bc1 = f1.boundary_for(tri);
  REQUIRE(bc1.dirichlet.size() == 2);
  CHECK(bc1.contains("M"));
  CHECK(bc1.contains("S"));

  const Functional f2 = Functional::parse("lambda2-all");
  CHECK(f2.index == 2);
  CHECK(f2.boundary_for(rectangle_shape(2, 1)).dirichlet.size() == 4);

  const Functional f3 = Functional::parse("lambda1-l1l2w1");
  const auto bc3 = f3.boundary_for(right_trapezoid(0.5, 1.0, 1.0));
  REQUIRE(bc3.dirichlet.size() == 3);
  CHECK(bc3.contains("l1"));
  CHECK(bc3.contains("l2"));
  CHECK(bc3.contains("w1"));
  CHECK(!bc3.contains("w2"));

  const Functional f4 = Functional::parse("lambda1-L,M");
  const auto bc4 = f4.boundary_for(tri);
  CHECK(bc4.dirichlet.size() == 2);
  CHECK(bc4.contains("L"));

  CHECK_THROWS_AS(Functional::parse("mu2"), std::invalid_argument);
  CHECK_THROWS_AS(Functional::parse("lambda-MS"), std::invalid_argument);
  CHECK_THROWS_AS(Functional::parse("lambda0-M"), std::invalid_argument);
  CHECK_THROWS_AS(Functional::parse("lambda1-"), std::invalid_argument);
  CHECK_THROWS_AS(Functional::parse("lambda1-XY").boundary_for(tri),
                  std::invalid_argument);

  CHECK(family_from_string("triangles") == FamilyKind::Triangles);
  CHECK(family_from_string("right-trapezoids") == FamilyKind::RightTrapezoids);
  CHECK(family_from_string("rectangles") == FamilyKind::Rectangles);
  CHECK_THROWS_AS(family_from_string("squares"), std::invalid_argument);
}

TEST_CASE("rectangle minimization lands on the square") {
  const VerifyOptions coarse{2, 4, 1e-10, 0};
  const auto res = minimize_functional(FamilyKind::Rectangles,
                                       Functional::parse("lambda1-all"), 1.0, coarse);
  REQUIRE(res.restarts.size() == 5);
  CHECK(res.converged);
  CHECK(res.restart_spread <= 5e-3);
  CHECK(near(res.best_value, 2 * kPi2, 0.02));
  REQUIRE(res.best_params.size() == 1);
  CHECK(std::abs(res.best_params[0]) < 0.05);  // log-aspect of the square
  CHECK(res.best_shape.kind == ShapeKind::Rectangle);
  for (const auto& r : res.restarts) {
    CHECK(r.evaluations > 0);
    CHECK(near(r.value, res.best_value, 5e-3));
  }
  const auto j = res.to_json();
  CHECK(j.at("family") == "rectangles");
  CHECK(j.at("converged").get<bool>());
}

TEST_CASE("verification results do not depend on the worker count") {
  const auto grid = triangle_grid(0.5, 2, 2, 1.3, 1.9, 2.0, 20.0);
  VerifyOptions serial = kFast;
  serial.parallelism = 1;
  VerifyOptions wide = kFast;
  wide.parallelism = 4;
  const auto a = check_thm4(grid, serial);
  const auto b = check_thm4(grid, wide);
  REQUIRE(a.instances.size() == b.instances.size());
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    CHECK(a.instances[i].computed == b.instances[i].computed);  // bitwise
    CHECK(a.instances[i].error_bar == b.instances[i].error_bar);
    CHECK(a.instances[i].verdict == b.instances[i].verdict);
  }
}
