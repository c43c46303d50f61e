#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "crlab/errors.hpp"
#include "crlab/yamabe.hpp"

using namespace crlab;
using Catch::Approx;
using std::numbers::pi;

namespace {

ParamDomain box(double x0, double y0, double x1, double y1) {
  ParamDomain d;
  d.lo = {x0, y0};
  d.hi = {x1, y1};
  return d;
}

QuadratureSpec grid(int n) {
  QuadratureSpec q;
  q.n1 = q.n2 = n;
  return q;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> geometric_eps(int n, double hi, double lo) {
  std::vector<double> e;
  for (int i = 0; i < n; ++i) e.push_back(hi * std::pow(lo / hi, i / double(n - 1)));
  return e;
}

// Truncated power series in rho.
using Series = std::vector<double>;
constexpr int kDeg = 6;

Series mul(const Series& a, const Series& b) {
  Series c(kDeg + 1, 0.0);
  for (int i = 0; i <= kDeg; ++i)
    for (int j = 0; i + j <= kDeg; ++j) c[i + j] += a[i] * b[j];
  return c;
}

Series diff(const Series& a) {
  Series d(kDeg + 1, 0.0);
  for (int i = 1; i <= kDeg; ++i) d[i - 1] = i * a[i];
  return d;
}

// Non-log part of |du|^2 - u Lap u / 2 for u(rho) = sum a_k rho^k on the
// cylinder r = R - rho, where Lap f(r) = f'' + f'/r.
Series radial_residual(const Series& u, double R) {
  Series inv(kDeg + 1);  // 1 / (R - rho)
  for (int i = 0; i <= kDeg; ++i) inv[i] = std::pow(R, -i - 1);
  const Series du = diff(u), ddu = diff(du);
  Series lap = mul(du, inv);
  for (int i = 0; i <= kDeg; ++i) lap[i] = ddu[i] - lap[i];
  Series res = mul(du, du);
  const Series ul = mul(u, lap);
  for (int i = 0; i <= kDeg; ++i) res[i] -= 0.5 * ul[i];
  return res;
}

// Solve the residual = 1 order by order.  A ρ^5 log ρ term contributes -5/2 l
// to the ρ^4 coefficient and nothing to the log terms there.
ExpansionCoeffs cylinder_series(double R) {
  Series u(kDeg + 1, 0.0);
  u[1] = 1.0;
  for (int k = 2; k <= 4; ++k) {
    const double c = radial_residual(u, R)[k - 1];
    u[k] = -c / (2.0 * k - 0.5 * k * (k - 1));
  }
  return {u[2], u[3], u[4], radial_residual(u, R)[4] / 2.5};
}

}  // namespace

TEST_CASE("cylinder expansion coefficients", "[yamabe]") {
  const ExpansionCoeffs k = expansion_coeffs(Cylinder(1.0, 1.0), {0.4, 0.3});
  CHECK(k.v == Approx(-1.0 / 6).margin(1e-12));
  CHECK(k.w == Approx(-1.0 / 9).margin(1e-12));
  CHECK(k.z == Approx(-11.0 / 108).margin(1e-12));
  CHECK(k.l == Approx(4.0 / 135).margin(1e-12));
  CHECK(el_residual_e2(jet_at(Cylinder(), {0.4, 0.3}, 3)) == Approx(4.0 / 27).margin(1e-12));
}

TEST_CASE("cylinder coefficients solve the radial equation", "[yamabe]") {
  // Independent of the pointwise formulas: the series solution of the ODE.
  for (double R : {1.0, 0.7, 2.5}) {
    const ExpansionCoeffs s = cylinder_series(R);
    const ExpansionCoeffs k = expansion_coeffs(Cylinder(R, 1.0), {0.4, 0.3});
    CHECK(k.v == Approx(s.v).margin(1e-12));
    CHECK(k.w == Approx(s.w).margin(1e-12));
    CHECK(k.z == Approx(s.z).margin(1e-12));
    CHECK(k.l == Approx(s.l).margin(1e-12));
  }
  CHECK(cylinder_series(1.0).l == Approx(4.0 / 135).margin(1e-14));
}

TEST_CASE("vertical plane and Clifford torus coefficients", "[yamabe]") {
  const ExpansionCoeffs p = expansion_coeffs(VerticalPlane(1, 0, 0), {0.2, 0.1});
  CHECK(p.v == 0.0);
  CHECK(p.w == Approx(0).margin(1e-15));
  CHECK(p.z == Approx(0).margin(1e-15));
  CHECK(p.l == Approx(0).margin(1e-15));
  const ExpansionCoeffs c = expansion_coeffs(TorusS3(std::sqrt(0.5)), {1.0, 2.0});
  CHECK(c.v == Approx(0).margin(1e-14));
  // R = 2W = 4 on the sphere: w = -(2/3)(3 R / 16)
  CHECK(c.w == Approx(-0.5).epsilon(1e-12));
  CHECK(c.z == Approx(0).margin(1e-12));
  CHECK(c.l == Approx(4.0 / 15).epsilon(1e-10));
}

TEST_CASE("Clifford w with W in place of R", "[yamabe][!shouldfail]") {
  // -(2/3)(3 * 2 / 16) substitutes W = 2 for R; v2 = -4w - R/2 = 0 forces -1/2.
  CHECK(expansion_coeffs(TorusS3(std::sqrt(0.5)), {1.0, 2.0}).w == Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("Clifford w is consistent with v2", "[yamabe]") {
  const InvariantJet j = jet_at(TorusS3(std::sqrt(0.5)), {1.0, 2.0}, 3);
  const ExpansionCoeffs k = expansion_coeffs(j);
  CHECK(volume_densities(j).v2 == Approx(0).margin(1e-14));
  CHECK(-4 * k.w - collar_measure(j).b == Approx(0).margin(1e-13));
}

TEST_CASE("volume densities", "[yamabe]") {
  const VolumeDensities c = volume_densities(Cylinder(), {0.1, 0.2});
  CHECK(c.v1 == Approx(-1.0 / 3).margin(1e-13));
  CHECK(c.v2 == Approx(1.0 / 18).margin(1e-13));
  CHECK(c.v3 == Approx(4.0 / 27).margin(1e-13));
  CHECK(volume_densities(TorusS3(std::sqrt(0.8)), {0.3, 0.2}).v3 == Approx(1.5).epsilon(1e-12));
  const VolumeDensities p = volume_densities(VerticalPlane(1, 0, 0), {0.1, 0.2});
  CHECK(p.v1 == 0.0);
  CHECK(p.v2 == Approx(0).margin(1e-15));
  CHECK(p.v3 == Approx(0).margin(1e-15));
}

TEST_CASE("densities match the expanded collar product", "[yamabe][property]") {
  // u^-4 (1 - H rho - b rho^2 + c rho^3) with u / rho = 1 + v rho + w rho^2 + z rho^3
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> U(0.2, 0.8);
  const std::vector<SurfacePtr> fams{
      make_dilation_cone(0.7), make_heis_sphere(1.0), std::make_shared<TorusS3>(0.6),
      make_polynomial_graph({{2, 0, 0.3}, {1, 1, -0.4}, {0, 3, 0.2}}, box(0.5, 0.5, 1.5, 1.5))};
  for (const SurfacePtr& s : fams) {
    const ParamDomain d = s->domain(1e-2);
    for (int n = 0; n < 10; ++n) {
      const Param uv{d.lo[0] + U(rng) * (d.hi[0] - d.lo[0]), d.lo[1] + U(rng) * (d.hi[1] - d.lo[1])};
      const InvariantJet j = jet_at(*s, uv, 3);
      const ExpansionCoeffs k = expansion_coeffs(j);
      const CollarMeasure m = collar_measure(j);
      const VolumeDensities vd = volume_densities(j);
      const double q1 = -4 * k.v, q2 = 10 * k.v * k.v - 4 * k.w,
                   q3 = -20 * k.v * k.v * k.v + 20 * k.v * k.w - 4 * k.z;
      CHECK(vd.v1 == Approx(q1 - j.H).margin(1e-9));
      CHECK(vd.v2 == Approx(q2 - j.H * q1 - m.b).margin(1e-9));
      CHECK(vd.v3 == Approx(q3 - j.H * q2 - m.b * q1 + m.c).margin(1e-9));
      CHECK(k.v == Approx(-j.H / 6).margin(1e-14));
    }
  }
}

TEST_CASE("l is a fifth of the E2 residual", "[yamabe][property]") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> U(0.05, 0.95);
  const std::vector<SurfacePtr> fams{
      make_dilation_cone(0.7), make_shifted_sphere(1.0, 0.4), std::make_shared<TorusS3>(0.6),
      std::make_shared<FoliatedGraph>(1, 0.2, box(-1, 0.5, 1, 1.5)),
      make_polynomial_graph({{2, 0, 0.3}, {1, 1, -0.4}, {0, 3, 0.2}}, box(0.5, 0.5, 1.5, 1.5))};
  for (const SurfacePtr& s : fams) {
    const ParamDomain d = s->domain(1e-2);
    for (int n = 0; n < 100; ++n) {
      const Param uv{d.lo[0] + U(rng) * (d.hi[0] - d.lo[0]), d.lo[1] + U(rng) * (d.hi[1] - d.lo[1])};
      const InvariantJet j = jet_at(*s, uv, 3);
      CHECK(std::abs(expansion_coeffs(j).l - el_residual_e2(j) / 5) < 1e-9);
    }
  }
}

TEST_CASE("cylinder PDE residual", "[yamabe]") {
  const Cylinder C(1.0, 1.0);
  for (double rho : {1e-2, 1e-3}) {
    const double r = cylinder_pde_residual(C, rho);
    INFO("rho " << rho << " residual - 1 = " << r - 1);
    CHECK(std::abs(r - 1) <= 10 * std::pow(rho, 4) * std::abs(std::log(rho)));
  }
  // the frame-flow stencil agrees where its truncation noise allows
  CHECK(cylinder_pde_residual_fd(C, 1e-2) == Approx(cylinder_pde_residual(C, 1e-2)).margin(1e-6));
  CHECK_THROWS_AS(cylinder_pde_residual(C, 1.5), std::invalid_argument);
}

TEST_CASE("renormalized volume coefficients on tori", "[yamabe]") {
  const TorusS3 T(std::sqrt(0.8));
  const RenormCoefficients r = renorm_coefficients(T, grid(16));
  CHECK(rel(r.L, 2.4 * pi * pi) < 1e-8);
  CHECK(rel(r.c0, 0.4 * 4 * pi * pi / 3) < 1e-12);
  CHECK(rel(r.c1, -1.5 * 0.4 * 4 * pi * pi / 6) < 1e-12);
  CHECK(rel(r.c2, (1.5 * 1.5 / 18) * 0.4 * 4 * pi * pi) < 1e-12);
  CHECK(renorm_coefficients(TorusS3(std::sqrt(0.5)), grid(16)).c1 == Approx(0).margin(1e-12));
}

TEST_CASE("L equals twice E2 on tori", "[yamabe][property]") {
  for (double r2 : {0.3, 0.5, 0.7, 0.8}) {
    const TorusS3 T(std::sqrt(r2));
    const double L = renorm_coefficients(T, grid(16)).L, E2 = energy_e2(T, grid(16)).value;
    CHECK(std::abs(L - 2 * E2) / std::abs(L) < 1e-7);
  }
}

TEST_CASE("the exact-form integral vanishes on closed tori", "[yamabe]") {
  for (double r2 : {0.3, 0.5, 0.7, 0.8})
    CHECK(std::abs(exact_form_check(TorusS3(std::sqrt(r2)), grid(16)).value) < 1e-8);
  CHECK(std::abs(exact_form_check(TorusS3(std::sqrt(0.5)), grid(16)).value) < 1e-10);
  const InvariantJet j = jet_at(TorusS3(std::sqrt(0.8)), {0.1, 0.2}, 3);
  CHECK(da2_density(j) == Approx(0.75).epsilon(1e-12));
  CHECK(da2_density(j) - volume_densities(j).v3 / 2 == Approx(0).margin(1e-12));
  CHECK_THROWS_AS(exact_form_check(VerticalPlane(1, 0, 0), grid(16)), std::invalid_argument);
}

TEST_CASE("direct volume fit on the torus", "[yamabe]") {
  const TorusS3 T(std::sqrt(0.8));
  const RenormCoefficients r = renorm_coefficients(T, grid(16));
  const RenormFit f = direct_volume_fit(T, geometric_eps(12, 2e-2, 3e-4));
  INFO("L_fit " << f.L_fit << " condition " << f.condition);
  CHECK(rel(f.c0_fit, r.c0) < 1e-3);
  CHECK(rel(f.c1_fit, r.c1) < 1e-3);
  CHECK(rel(f.c2_fit, r.c2) < 1e-3);
  CHECK(rel(f.L_fit, r.L) < 1e-3);
  CHECK(f.condition < 1e12);
  CHECK(f.remainder_terms == 3);
  CHECK(f.eps_range.first == Approx(3e-4));
  CHECK(f.eps_range.second == Approx(2e-2));
}

TEST_CASE("six halvings from 0.02 recover L", "[yamabe][!shouldfail]") {
  // Six points leave no room for the o(1) remainder; the log term absorbs it.
  std::vector<double> eps;
  for (int k = 0; k <= 5; ++k) eps.push_back(0.02 * std::pow(2.0, -k));
  const RenormFit f = direct_volume_fit(TorusS3(std::sqrt(0.8)), eps);
  CHECK(rel(f.L_fit, 2.4 * pi * pi) < 1e-3);
}

TEST_CASE("direct volume fit on the cylinder", "[yamabe]") {
  const RenormFit f = direct_volume_fit(Cylinder(1.0, 1.0), geometric_eps(12, 2e-2, 3e-4));
  CHECK(f.c0_fit == Approx(2 * pi / 3).margin(1e-6));
}

TEST_CASE("ill-posed fits are rejected", "[yamabe][errors]") {
  const TorusS3 T(std::sqrt(0.8));
  CHECK_THROWS_AS(direct_volume_fit(T, {2e-2, 1e-2, 5e-3}), FitIllConditionedError);
  CHECK_THROWS_AS(direct_volume_fit(T, geometric_eps(8, 2e-2, 4e-3)), FitIllConditionedError);
  CHECK_THROWS_AS(direct_volume_fit(T, {1e-2, 2e-2, 5e-3, 1e-3, 5e-4, 2e-4}), std::invalid_argument);
  CHECK_THROWS_AS(direct_volume_fit(T, geometric_eps(8, 0.2, 1e-3)), std::invalid_argument);
}

TEST_CASE("coefficient table", "[yamabe]") {
  const auto rows = coefficient_table(Cylinder(), 3, 4);
  REQUIRE(rows.size() == 12);
  for (const auto& r : rows) {
    CHECK(r.coeffs.l == Approx(4.0 / 135).margin(1e-12));
    CHECK(r.dens.v3 == Approx(4.0 / 27).margin(1e-12));
  }
  CHECK_THROWS_AS(coefficient_table(Cylinder(), 0, 4), std::invalid_argument);
}

TEST_CASE("the expansion requires a model ambient", "[yamabe][errors]") {
  auto amb = std::make_shared<RescaledAmbient>(heisenberg(),
                                               [](const JetVec& X) { return 1.0 + 0.1 * sin(X[0]); });
  const RetargetedSurface s(make_dilation_cone(0.7), amb);
  CHECK_THROWS_AS(expansion_coeffs(s, {0.3, 1.0}), std::domain_error);
  CHECK_THROWS_AS(volume_densities(s, {0.3, 1.0}), std::domain_error);
  CHECK_THROWS_AS(renorm_coefficients(s, grid(16)), std::domain_error);
  CHECK_THROWS_AS(coefficient_table(s, 2, 2), std::domain_error);
  CHECK_THROWS_AS(expansion_coeffs(jet_at(Cylinder(), {0.1, 0.1}, 2)), std::logic_error);
}
