#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "crlab/ambient.hpp"
#include "crlab/errors.hpp"

using namespace crlab;
using Catch::Approx;

namespace {

void check_vec(const Vec3& a, const Vec3& b, double tol) {
  for (int i = 0; i < 3; ++i) CHECK(a[i] == Approx(b[i]).margin(tol));
}

double theta_of(const std::array<double, 3>& th, const Vec3& v) {
  return th[0] * v[0] + th[1] * v[1] + th[2] * v[2];
}

// d theta(X, Y) = X theta(Y) - Y theta(X) - theta([X, Y]) with jets.
double dtheta(const FrameJet& f, const JetVec& X, const JetVec& Y) {
  auto th = [&](const JetVec& v) { return f.theta[0] * v[0] + f.theta[1] * v[1] + f.theta[2] * v[2]; };
  const JetVec B = bracket(X, Y);
  return (deriv(X, th(Y)) - deriv(Y, th(X)) - th(B)).value();
}

}  // namespace

TEST_CASE("model constants", "[ambient]") {
  CHECK(heisenberg()->webster_W() == 0.0);
  CHECK(sphere3()->webster_W() == 2.0);
  for (auto m : {heisenberg(), sphere3()}) {
    CHECK(m->torsion_a1() == 0.0);
    CHECK(m->torsion_a2() == 0.0);
  }
}

TEST_CASE("contact data examples", "[ambient]") {
  const ContactData o = contact_data(*heisenberg(), {0, 0, 0});
  check_vec(o.T, {0, 0, 1}, 0);
  check_vec(o.e1, {1, 0, 0}, 0);
  check_vec(o.e2, {0, 1, 0}, 0);

  const ContactData p = contact_data(*heisenberg(), {1, 2, 0});
  check_vec(p.e1, {1, 0, 2}, 1e-15);
  check_vec(p.e2, {0, 1, -1}, 1e-15);

  const double r = std::sqrt(0.5);
  const ContactData s = contact_data(*sphere3(), {0.3, 1.1, r});
  check_vec(s.T, {1, 1, 0}, 1e-15);
  for (const ContactData& d : {o, p, s}) {
    CHECK(theta_of(d.theta, d.e1) == Approx(0).margin(1e-12));
    CHECK(theta_of(d.theta, d.e2) == Approx(0).margin(1e-12));
    CHECK(theta_of(d.theta, d.T) == Approx(1).margin(1e-12));
  }
}

TEST_CASE("sphere chart rejects the core circles", "[ambient][errors]") {
  CHECK_THROWS_AS(contact_data(*sphere3(), {0, 0, 0.0}), ChartDomainError);
  CHECK_THROWS_AS(contact_data(*sphere3(), {0, 0, 1.0}), ChartDomainError);
  CHECK_THROWS_AS(contact_data(*sphere3(), {0, 0, 1.5}), ChartDomainError);
  CHECK_NOTHROW(contact_data(*sphere3(), {0, 0, 0.5}));
}

TEST_CASE("frames are Levi-orthonormal", "[ambient][property]") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(-2, 2), R(0.05, 0.95);
  for (int k = 0; k < 50; ++k) {
    const Vec3 ph{U(rng), U(rng), U(rng)}, ps{U(rng), U(rng), R(rng)};
    for (const auto& [m, p] : {std::pair{heisenberg(), ph}, std::pair{sphere3(), ps}}) {
      const ContactData d = contact_data(*m, p);
      CHECK(levi_norm(*m, p, d.e1) == Approx(1).epsilon(1e-12));
      CHECK(levi_norm(*m, p, d.e2) == Approx(1).epsilon(1e-12));
      const Vec3 s{d.e1[0] + d.e2[0], d.e1[1] + d.e2[1], d.e1[2] + d.e2[2]};
      CHECK(levi_norm(*m, p, s) == Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("connection coefficients", "[ambient]") {
  const ConnectionCoeffs h = connection_form_coeffs(*heisenberg(), {0.4, -1.2, 3.0});
  CHECK(h.omega_e1 == 0.0);
  CHECK(h.omega_e2 == 0.0);
  CHECK(h.omega_T == 0.0);
  const ConnectionCoeffs c = connection_form_coeffs(*sphere3(), {0.1, 0.2, std::sqrt(0.5)});
  CHECK(c.omega_e1 == Approx(0).margin(1e-14));
  const double r1 = std::sqrt(0.8), r2 = std::sqrt(0.2);
  const ConnectionCoeffs t = connection_form_coeffs(*sphere3(), {0.1, 0.2, r1});
  CHECK(t.omega_e1 == Approx(1.5).epsilon(1e-13));
  CHECK(t.omega_e1 == Approx((r1 * r1 - r2 * r2) / (r1 * r2)).epsilon(1e-13));
}

TEST_CASE("rotating the frame by a constant leaves omega(T) unchanged", "[ambient]") {
  const Vec3 p{0.3, -0.2, 0.7};
  const ConnectionCoeffs a = connection_form_coeffs(*sphere3(), p);
  const ConnectionCoeffs b =
      connection_form_coeffs(*sphere3(), p, [](const JetVec&) { return Jet(0.4); });
  CHECK(b.omega_T == Approx(a.omega_T).margin(1e-14));
  CHECK(b.omega_e1 == Approx(std::cos(0.4) * a.omega_e1 + std::sin(0.4) * a.omega_e2).margin(1e-14));
}

TEST_CASE("structure equation d theta = 2 e1 ^ e2", "[ambient][property]") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-2, 2), R(0.05, 0.95);
  double worst = 0;
  for (int k = 0; k < 200; ++k) {
    const Vec3 ph{U(rng), U(rng), U(rng)}, ps{U(rng), U(rng), R(rng)};
    for (const auto& [m, p] : {std::pair{heisenberg(), ph}, std::pair{sphere3(), ps}}) {
      const FrameJet f = m->frame_at(p, 2);
      worst = std::max(worst, std::abs(dtheta(f, f.E1, f.E2) - 2.0));
      worst = std::max(worst, std::abs(dtheta(f, f.T, f.E1)));
      worst = std::max(worst, std::abs(dtheta(f, f.T, f.E2)));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("Webster identity by finite differences", "[ambient][property]") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(-2, 2), R(0.1, 0.9);
  for (int k = 0; k < 20; ++k) {
    CHECK(webster_identity_fd(*heisenberg(), {U(rng), U(rng), U(rng)}) == Approx(0).margin(1e-6));
    CHECK(webster_identity_fd(*sphere3(), {U(rng), U(rng), R(rng)}) ==
          Approx(-2.0 * 2.0).margin(1e-6));
  }
}

TEST_CASE("Heisenberg geodesic examples", "[ambient]") {
  auto H = heisenberg();
  check_vec(contact_geodesic(*H, {1, 0, 0}, {-1, 0, 0}, 0.25), {0.75, 0, 0}, 1e-13);
  check_vec(contact_geodesic(*H, {0, 0, 0}, {0, 1, 0}, 1.0), {0, 1, 0}, 1e-13);
  check_vec(contact_geodesic(*H, {1, 0, 0}, {0, 1, -1}, 1.0), {1, 1, -1}, 1e-13);
  // closed form (x + a rho, y + b rho, t + rho (y a - x b)) for v0 = a e1 + b e2
  const double a = 0.6, b = -0.8;
  const Vec3 p{0.5, 1.5, -0.3};
  const Vec3 v0{a, b, a * p[1] - b * p[0]};
  const double rho = 0.9;
  check_vec(contact_geodesic(*H, p, v0, rho, 0.05),
            {p[0] + a * rho, p[1] + b * rho, p[2] + rho * (p[1] * a - p[0] * b)}, 1e-12);
}

TEST_CASE("geodesic argument checks", "[ambient][errors]") {
  auto H = heisenberg();
  CHECK_THROWS_AS(contact_geodesic(*H, {0, 0, 0}, {1, 0, 0}, 1.0, 0.0), StepSizeError);
  CHECK_THROWS_AS(contact_geodesic(*H, {0, 0, 0}, {1, 0, 0}, 1.0, -1e-3), StepSizeError);
  CHECK_THROWS_AS(contact_geodesic(*H, {0, 0, 0}, {0, 0, 1}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(contact_geodesic(*H, {0, 0, 0}, {2, 0, 0}, 1.0), std::invalid_argument);
}

TEST_CASE("geodesic speed is conserved", "[ambient][property]") {
  auto S = sphere3();
  const Vec3 p{0.2, -0.4, 0.6};
  const ContactData d = contact_data(*S, p);
  const double c = std::cos(0.7), s = std::sin(0.7);
  const Vec3 v0{c * d.e1[0] + s * d.e2[0], c * d.e1[1] + s * d.e2[1], c * d.e1[2] + s * d.e2[2]};
  for (double rho : {0.1, 0.25, 0.5}) {
    const GeodesicState g = contact_geodesic_state(*S, p, v0, rho);
    CHECK(levi_norm(*S, g.point, g.velocity) == Approx(1).margin(1e-9));
    CHECK(g.point[2] > 0.0);
    CHECK(g.point[2] < 1.0);
  }
  // step independence on the sphere to the integrator's accuracy
  const Vec3 a = contact_geodesic(*S, p, v0, 0.5, 1e-3);
  const Vec3 b = contact_geodesic(*S, p, v0, 0.5, 2.5e-4);
  check_vec(a, b, 1e-8);
}

TEST_CASE("rescaled Heisenberg recovers the model data for lambda = 1", "[ambient]") {
  RescaledAmbient m(heisenberg(), [](const JetVec&) { return Jet(1.0); });
  const FrameJet f = m.frame_at({0.3, 0.4, 0.5}, 3);
  CHECK(f.W.value() == Approx(0).margin(1e-13));
  CHECK(f.a1.value() == Approx(0).margin(1e-13));
  CHECK(f.a2.value() == Approx(0).margin(1e-13));
  CHECK(f.om1.value() == Approx(0).margin(1e-13));
}
