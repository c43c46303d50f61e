#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>

#include "crlab/errors.hpp"
#include "crlab/varcheck.hpp"

using namespace crlab;
using Catch::Approx;
using std::numbers::pi;

namespace {

const double kC = std::sqrt(0.75);

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(a + (b - a) * i / (n - 1));
  return g;
}

SurfacePtr cone(double c) { return make_dilation_cone(c); }

VariationSpec e2_spec(std::vector<double> steps, int n = 64) {
  VariationSpec v;
  v.target = VariationTarget::E2;
  v.steps = std::move(steps);
  v.quadrature = {n, n, 0.0, 1};
  return v;
}

// Wide enough to be resolved by a 64-point periodic grid.
TestFunction wide_bump() { return bump({pi, pi}, 3.0, 3.0, 1.0); }

}  // namespace

TEST_CASE("scan targets parse", "[varcheck]") {
  for (ScanTarget t : {ScanTarget::E1, ScanTarget::E2, ScanTarget::ResidualE1,
                       ScanTarget::ResidualE2, ScanTarget::HcrAt, ScanTarget::SupHcr})
    CHECK(parse_scan_target(to_string(t)) == t);
  CHECK_THROWS_AS(parse_scan_target("bogus"), InputError);
  CHECK(parse_variation_target("e1") == VariationTarget::E1);
  CHECK(parse_variation_target("L") == VariationTarget::L);
  CHECK_THROWS_AS(parse_variation_target("e3"), InputError);
}

TEST_CASE("dilation cones are E2-critical at c^2 = 3/4", "[varcheck]") {
  ScanSpec sp;
  sp.target = ScanTarget::ResidualE2;
  const FamilyScan r = scan_family(cone, linspace(0.5, 1.2, 15), sp);
  REQUIRE(r.critical.size() == 1);
  const CriticalPoint& c = r.critical[0];
  CHECK(std::abs(c.param - kC) < 1e-9);
  CHECK(c.bracket_lo <= c.param);
  CHECK(c.param <= c.bracket_hi);
  for (const std::string& e : r.errors) CHECK(e.empty());
}

TEST_CASE("dilation cones have Hcr = 0 at c^2 = 3/4", "[varcheck]") {
  ScanSpec sp;
  sp.target = ScanTarget::HcrAt;
  sp.tol = 1e-13;
  const FamilyScan r = scan_family(cone, linspace(0.5, 1.2, 15), sp);
  REQUIRE(r.critical.size() == 1);
  CHECK(r.critical[0].kind == "root");
  CHECK(std::abs(r.critical[0].param - kC) < 1e-12);
}

TEST_CASE("scanning c^2 instead of c", "[varcheck][property]") {
  ScanSpec sp;
  sp.target = ScanTarget::ResidualE2;
  const FamilyScan a = scan_family(cone, linspace(0.5, 1.2, 15), sp);
  const FamilyScan b =
      scan_family([](double s) { return cone(std::sqrt(s)); }, linspace(0.25, 1.44, 15), sp);
  REQUIRE(a.critical.size() == 1);
  REQUIRE(b.critical.size() == 1);
  CHECK(std::abs(std::sqrt(b.critical[0].param) - a.critical[0].param) < 1e-9);
}

TEST_CASE("shifted spheres: sup |Hcr| vanishes at lambda = (sqrt 3 / 2) rho0^2", "[varcheck]") {
  ScanSpec sp;
  sp.target = ScanTarget::SupHcr;
  sp.cutoff = 1e-3;
  sp.sup_samples = 400;
  for (double rho0 : {0.7, 1.3}) {
    auto gen = [rho0](double l) { return make_shifted_sphere(rho0, l * rho0 * rho0); };
    const FamilyScan r = scan_family(gen, linspace(0.5, 1.2, 8), sp);
    REQUIRE(r.critical.size() == 1);
    CHECK(r.critical[0].kind == "minimum");
    CHECK(r.critical[0].param == Approx(kC).margin(1e-6));
    CHECK(r.critical[0].value < 1e-6);
  }
  CHECK(scan_value(*make_shifted_sphere(1.0, 0.6), sp) > 0.05);
}

TEST_CASE("tori in the sphere are never E2-critical", "[varcheck]") {
  ScanSpec sp;
  sp.target = ScanTarget::ResidualE2;
  const FamilyScan r = scan_family([](double p) { return std::make_shared<TorusS3>(p); },
                                   linspace(0.3, 0.95, 14), sp);
  for (double v : r.values) CHECK(v >= 4.0 / 3.0 - 1e-12);
  REQUIRE(r.critical.size() == 1);
  const CriticalPoint& m = r.critical[0];
  CHECK(m.kind == "minimum");
  CHECK(m.param == Approx(std::sqrt(0.5)).margin(1e-7));
  CHECK(m.value == Approx(4.0 / 3.0).margin(1e-12));
}

TEST_CASE("scan failures are recorded per parameter", "[varcheck][errors]") {
  ScanSpec sp;
  sp.target = ScanTarget::ResidualE2;
  const FamilyScan r = scan_family([](double p) { return std::make_shared<TorusS3>(p); },
                                   {0.5, 0.7, 1.2}, sp);
  REQUIRE(r.values.size() == 3);
  CHECK(std::isnan(r.values[2]));
  CHECK_FALSE(r.errors[2].empty());
  CHECK(r.errors[0].empty());
  CHECK_THROWS_AS(scan_family(cone, {0.8}, sp), std::invalid_argument);
  CHECK_THROWS_AS(scan_family(cone, {0.8, 0.7}, sp), std::invalid_argument);
}

TEST_CASE("first variation of E2 on a torus", "[varcheck]") {
  const VariationCheck v = first_variation_check(TorusS3(std::sqrt(0.8)), wide_bump(),
                                                 zero_function(), e2_spec({1e-2, 5e-3, 2.5e-3, 1e-3}));
  INFO("formula " << v.formula_derivative << " fd " << v.fd_derivative);
  CHECK(std::abs(v.formula_derivative) > 1.0);
  CHECK(std::abs(v.fd_derivative - v.formula_derivative) < 1e-4 * std::abs(v.formula_derivative));
  CHECK(v.order_ok);
  CHECK(v.passed);
  CHECK(v.step == 1e-3);
  for (double r : v.ratios) CHECK(r >= 3.5);
}

TEST_CASE("first variation of L on a torus", "[varcheck][slow]") {
  // The v3 density needs the finer grid; n = 64 leaves a 0.2% bias.
  VariationSpec vs = e2_spec({1e-2, 5e-3, 2.5e-3}, 128);
  vs.target = VariationTarget::L;
  const VariationCheck v = first_variation_check(TorusS3(std::sqrt(0.8)), wide_bump(), zero_function(), vs);
  CHECK(v.passed);
  CHECK(v.order_ok);
  // L = 2 E2 on closed surfaces, so the two first variations agree
  const VariationCheck e = first_variation_check(TorusS3(std::sqrt(0.8)), wide_bump(), zero_function(),
                                                 e2_spec({1e-2}, 128));
  CHECK(v.formula_derivative == Approx(2 * e.formula_derivative).epsilon(1e-9));
}

TEST_CASE("the Clifford torus is E1-critical", "[varcheck]") {
  VariationSpec vs = e2_spec({1e-3}, 32);
  vs.target = VariationTarget::E1;
  const VariationCheck v =
      first_variation_check(TorusS3(std::sqrt(0.5)), wide_bump(), zero_function(), vs);
  CHECK(std::abs(v.fd_derivative) < 1e-4);
  CHECK(std::abs(v.formula_derivative) < 1e-10);
  CHECK(v.passed);
}

TEST_CASE("a T-displacement of the cylinder does not vary E2", "[varcheck]") {
  const Cylinder C(1.0, 2 * pi);
  const VariationCheck v = first_variation_check(C, zero_function(), wide_bump(), e2_spec({1e-3}, 32));
  CHECK(std::abs(v.fd_derivative) < 1e-6);
  CHECK(std::abs(v.formula_derivative) < 1e-6);
}

TEST_CASE("normal displacement of the cylinder", "[varcheck]") {
  const Cylinder C(1.0, 2 * pi);
  const VariationCheck v =
      first_variation_check(C, wide_bump(), zero_function(), e2_spec({1e-2, 5e-3, 2.5e-3}));
  INFO("formula " << v.formula_derivative << " fd " << v.fd_derivative);
  CHECK(std::abs(v.formula_derivative) > 0.1);
  CHECK(v.passed);
  CHECK(v.order_ok);
}

TEST_CASE("the unperturbed cylinder graph is the cylinder", "[varcheck]") {
  const Cylinder C(1.3, 2.0);
  const CylinderGraph G(1.3, 2.0, [](const Jet& u, const Jet&) { return 0.0 * u; });
  const InvariantJet a = jet_at(C, {0.7, 0.4}, 3), b = jet_at(G, {0.7, 0.4}, 3);
  CHECK(b.H == Approx(a.H).margin(1e-13));
  CHECK(b.alpha == Approx(a.alpha).margin(1e-13));
  CHECK(el_residual_e2(b) == Approx(el_residual_e2(a)).margin(1e-12));
  CHECK(b.area_density == Approx(a.area_density).margin(1e-13));
}

TEST_CASE("first variation of E2 on a graph", "[varcheck]") {
  ParamDomain d;
  d.lo = {0.5, 0.5};
  d.hi = {1.5, 1.5};
  const auto g = make_polynomial_graph({{2, 0, 0.3}, {1, 1, -0.4}, {0, 3, 0.2}}, d);
  // Narrow bumps have large third s-derivatives; the relative FD error
  // scales with amplitude^2, so keep the amplitudes small.
  const TestFunction f = bump({1.0, 1.0}, 0.45, 0.45, 0.1), gg = bump({1.0, 1.05}, 0.4, 0.4, 0.05);
  const VariationCheck v = first_variation_check(*g, f, gg, e2_spec({4e-3, 2e-3, 1e-3}));
  INFO("formula " << v.formula_derivative << " fd " << v.fd_derivative);
  CHECK(std::abs(v.formula_derivative) > 1e-2);
  CHECK(v.passed);
  CHECK(v.order_ok);
  // Richardson on the last two steps removes the step^2 term
  const double rich = (4 * v.fd[2] - v.fd[1]) / 3;
  CHECK(std::abs(rich - v.formula_derivative) < 1e-4 * std::abs(v.formula_derivative));
}

TEST_CASE("variation check argument errors", "[varcheck][errors]") {
  const TorusS3 T(std::sqrt(0.8));
  CHECK_THROWS_AS(first_variation_check(T, bump({0.5, 3.0}, 1.0), zero_function(), e2_spec({1e-3})),
                  SupportError);
  CHECK_THROWS_AS(first_variation_check(T, wide_bump(), zero_function(), e2_spec({1e-3, 0.0})),
                  StepSizeError);
  CHECK_THROWS_AS(first_variation_check(T, wide_bump(), zero_function(), e2_spec({})),
                  std::invalid_argument);
  const auto S = make_shifted_sphere(1.0, 0.5);
  const ParamDomain d = S->domain();
  const Param mid{0.5 * (d.lo[0] + d.hi[0]), 0.5 * (d.lo[1] + d.hi[1])};
  CHECK_THROWS_AS(first_variation_check(*S, bump(mid, 0.3), zero_function(), e2_spec({1e-3})),
                  std::invalid_argument);
}
