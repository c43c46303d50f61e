#include "crlab/ambient.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "crlab/errors.hpp"

namespace crlab {
namespace {

Jet dot(const JetVec& a, const JetVec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

JetVec cross(const JetVec& a, const JetVec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 values(const JetVec& v) { return {v[0].value(), v[1].value(), v[2].value()}; }

int order_loss(const Ambient& m) { return frame_order_loss(m); }

}  // namespace

int frame_order_loss(const Ambient& m) { return m.kind() == AmbientKind::Rescaled ? 2 : 0; }

FrameJet Ambient::frame_at(const Vec3& p, int order) const {
  check_domain(p);
  return frame(seed(p, order));
}

FrameJet HeisenbergAmbient::frame(const JetVec& X) const {
  FrameJet f;
  const Jet& x = X[0];
  const Jet& y = X[1];
  f.E1 = {Jet(1.0), Jet(0.0), y};
  f.E2 = {Jet(0.0), Jet(1.0), -x};
  f.T = {Jet(0.0), Jet(0.0), Jet(1.0)};
  f.theta = {-y, x, Jet(1.0)};
  return f;
}

void SphereAmbient::check_domain(const Vec3& p) const {
  if (!(p[2] > 0.0 && p[2] < 1.0))
    throw ChartDomainError("sphere chart needs 0 < rho1 < 1, got " + std::to_string(p[2]));
}

FrameJet SphereAmbient::frame(const JetVec& X) const {
  const Jet& r1 = X[2];
  const Jet r2 = sqrt(1.0 - r1 * r1);
  FrameJet f;
  f.E1 = {-r2 / r1, r1 / r2, Jet(0.0)};
  f.E2 = {Jet(0.0), Jet(0.0), r2};
  f.T = {Jet(1.0), Jet(1.0), Jet(0.0)};
  f.theta = {r1 * r1, r2 * r2, Jet(0.0)};
  f.om1 = (r1 * r1 - r2 * r2) / (r1 * r2);
  f.W = Jet(2.0);
  return f;
}

RescaledAmbient::RescaledAmbient(std::shared_ptr<const Ambient> base, Factor lambda)
    : base_(std::move(base)), lambda_(std::move(lambda)) {}

double RescaledAmbient::webster_W() const { return std::numeric_limits<double>::quiet_NaN(); }
double RescaledAmbient::torsion_a1() const { return std::numeric_limits<double>::quiet_NaN(); }
double RescaledAmbient::torsion_a2() const { return std::numeric_limits<double>::quiet_NaN(); }

FrameJet RescaledAmbient::frame(const JetVec& X) const {
  const FrameJet b = base_->frame(X);
  const Jet lam = lambda_(X);
  const Jet il = 1.0 / lam;
  FrameJet f;
  f.E1 = il * b.E1;
  f.E2 = il * b.E2;
  const Jet il3 = il * il * il;
  f.T = (il * il) * b.T + (il3 * deriv(b.E2, lam)) * b.E1 - (il3 * deriv(b.E1, lam)) * b.E2;
  const Jet l2 = lam * lam;
  f.theta = {l2 * b.theta[0], l2 * b.theta[1], l2 * b.theta[2]};
  connection_from_brackets(f);
  return f;
}

std::array<Jet, 3> frame_components(const FrameJet& f, const JetVec& v) {
  const JetVec r0 = cross(f.E2, f.T);
  const JetVec r1 = cross(f.T, f.E1);
  const JetVec r2 = cross(f.E1, f.E2);
  const Jet inv_det = 1.0 / dot(f.E1, r0);
  return {dot(r0, v) * inv_det, dot(r1, v) * inv_det, dot(r2, v) * inv_det};
}

void connection_from_brackets(FrameJet& f) {
  // [e1, e2] = -om(e1) e1 - om(e2) e2 - 2T
  const auto c12 = frame_components(f, bracket(f.E1, f.E2));
  f.om1 = -c12[0];
  f.om2 = -c12[1];
  const auto ct1 = frame_components(f, bracket(f.T, f.E1));
  const auto ct2 = frame_components(f, bracket(f.T, f.E2));
  const Jet A = ct1[1];
  const Jet B = ct2[0];
  f.omT = 0.5 * (A - B);
  f.a2 = 0.5 * (A + B);
  f.a1 = -ct1[0];
  const Jet m2W = deriv(f.E1, f.om2) - deriv(f.E2, f.om1) + f.om2 * f.om2 + f.om1 * f.om1 +
                  2.0 * f.omT;
  f.W = -0.5 * m2W;
}

ContactData contact_data(const Ambient& m, const Vec3& p) {
  const FrameJet f = m.frame_at(p, order_loss(m));
  ContactData d;
  d.theta = {f.theta[0].value(), f.theta[1].value(), f.theta[2].value()};
  d.e1 = values(f.E1);
  d.e2 = values(f.E2);
  d.T = values(f.T);
  return d;
}

ConnectionCoeffs connection_form_coeffs(const Ambient& m, const Vec3& p,
                                        const std::function<Jet(const JetVec&)>& beta) {
  const int order = order_loss(m) + 1;
  m.check_domain(p);
  const JetVec X = seed(p, order);
  const FrameJet f = m.frame(X);
  if (!beta) return {f.om1.value(), f.om2.value(), f.omT.value()};
  const Jet b = beta(X);
  const Jet c = cos(b), s = sin(b);
  const JetVec e1 = c * f.E1 + s * f.E2;
  const JetVec e2 = (-s) * f.E1 + c * f.E2;
  return {(c * f.om1 + s * f.om2 + deriv(e1, b)).value(),
          (-s * f.om1 + c * f.om2 + deriv(e2, b)).value(),
          (f.omT + deriv(f.T, b)).value()};
}

double webster_identity_fd(const Ambient& m, const Vec3& p, double h) {
  const int order = order_loss(m);
  const FrameJet f0 = m.frame_at(p, order);
  const Vec3 E1 = values(f0.E1), E2 = values(f0.E2);
  auto along = [&](const Vec3& dir, int which, double step) {
    auto at = [&](double s) {
      Vec3 q{p[0] + s * dir[0], p[1] + s * dir[1], p[2] + s * dir[2]};
      const FrameJet f = m.frame_at(q, order);
      return which == 1 ? f.om1.value() : f.om2.value();
    };
    return (at(step) - at(-step)) / (2.0 * step);
  };
  auto rich = [&](const Vec3& dir, int which) {
    const double d1 = along(dir, which, h), d2 = along(dir, which, 0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
  };
  const double om1 = f0.om1.value(), om2 = f0.om2.value(), omT = f0.omT.value();
  return rich(E1, 2) - rich(E2, 1) + om2 * om2 + om1 * om1 + 2.0 * omT;
}

GeodesicState contact_geodesic_state(const Ambient& m, const Vec3& p, const Vec3& v0,
                                     double rho, double step) {
  if (!(step > 0.0)) throw StepSizeError("geodesic step must be positive");
  if (!(rho >= 0.0)) throw std::invalid_argument("geodesic parameter must be >= 0");
  const int order = order_loss(m);
  auto frame = [&](const Vec3& x) { return m.frame_at(x, order); };
  const FrameJet f0 = frame(p);
  const auto c = frame_components(f0, {Jet(v0[0]), Jet(v0[1]), Jet(v0[2])});
  if (std::abs(c[2].value()) > 1e-10) throw std::invalid_argument("v0 is not horizontal");
  const double nrm = std::hypot(c[0].value(), c[1].value());
  if (std::abs(nrm - 1.0) > 1e-10) throw std::invalid_argument("v0 is not a unit vector");

  struct S {
    Vec3 x;
    double beta;
  };
  auto rhs = [&](const S& s) {
    const FrameJet f = frame(s.x);
    const double cb = std::cos(s.beta), sb = std::sin(s.beta);
    S d;
    for (int i = 0; i < 3; ++i) d.x[i] = cb * f.E1[i].value() + sb * f.E2[i].value();
    d.beta = -(cb * f.om1.value() + sb * f.om2.value());
    return d;
  };
  auto axpy = [](const S& a, double h, const S& d) {
    S r;
    for (int i = 0; i < 3; ++i) r.x[i] = a.x[i] + h * d.x[i];
    r.beta = a.beta + h * d.beta;
    return r;
  };
  S s{p, std::atan2(c[1].value(), c[0].value())};
  if (rho > 0.0) {
    const double hmax = std::min(step, 1e-3 * rho);
    const long n = static_cast<long>(std::ceil(rho / hmax - 1e-9));
    const double h = rho / static_cast<double>(n);
    for (long k = 0; k < n; ++k) {
      const S k1 = rhs(s);
      const S k2 = rhs(axpy(s, 0.5 * h, k1));
      const S k3 = rhs(axpy(s, 0.5 * h, k2));
      const S k4 = rhs(axpy(s, h, k3));
      for (int i = 0; i < 3; ++i)
        s.x[i] += h / 6.0 * (k1.x[i] + 2.0 * k2.x[i] + 2.0 * k3.x[i] + k4.x[i]);
      s.beta += h / 6.0 * (k1.beta + 2.0 * k2.beta + 2.0 * k3.beta + k4.beta);
    }
  }
  const FrameJet f = frame(s.x);
  const double cb = std::cos(s.beta), sb = std::sin(s.beta);
  GeodesicState out;
  out.point = s.x;
  for (int i = 0; i < 3; ++i) out.velocity[i] = cb * f.E1[i].value() + sb * f.E2[i].value();
  return out;
}

Vec3 contact_geodesic(const Ambient& m, const Vec3& p, const Vec3& v0, double rho,
                      double step) {
  return contact_geodesic_state(m, p, v0, rho, step).point;
}

double levi_norm(const Ambient& m, const Vec3& p, const Vec3& v) {
  const FrameJet f = m.frame_at(p, order_loss(m));
  const auto c = frame_components(f, {Jet(v[0]), Jet(v[1]), Jet(v[2])});
  return std::sqrt(c[0].value() * c[0].value() + c[1].value() * c[1].value() +
                   c[2].value() * c[2].value());
}

std::shared_ptr<const Ambient> heisenberg() {
  static const auto m = std::make_shared<const HeisenbergAmbient>();
  return m;
}

std::shared_ptr<const Ambient> sphere3() {
  static const auto m = std::make_shared<const SphereAmbient>();
  return m;
}

}  // namespace crlab
