#include "crlab/surfaces.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "crlab/errors.hpp"

namespace crlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

Jet ipow(const Jet& x, int n) {
  Jet r(1.0);
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

struct ChartJet {
  Vec3 P, Xu, Xv;
};

ChartJet chart_jet(const Surface& s, const Param& uv) {
  const JetVec X = s.chart(Jet::variable(0, uv[0], 1), Jet::variable(1, uv[1], 1));
  ChartJet c;
  for (int i = 0; i < 3; ++i) {
    c.P[i] = X[i].value();
    c.Xu[i] = X[i].coeff(1, 0, 0);
    c.Xv[i] = X[i].coeff(0, 1, 0);
  }
  return c;
}

Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 values(const JetVec& v) { return {v[0].value(), v[1].value(), v[2].value()}; }

// Components of v in the ambient frame (E1, E2, T) at the expansion point.
Vec3 components_at(const FrameJet& f, const Vec3& v) {
  const Vec3 E1 = values(f.E1), E2 = values(f.E2), T = values(f.T);
  const Vec3 r0 = cross3(E2, T), r1 = cross3(T, E1), r2 = cross3(E1, E2);
  const double inv_det = 1.0 / dot3(E1, r0);
  return {dot3(r0, v) * inv_det, dot3(r1, v) * inv_det, dot3(r2, v) * inv_det};
}

}  // namespace

bool Surface::closed() const {
  const ParamDomain d = domain();
  return d.periodic[0] && d.periodic[1];
}

Vec3 Surface::point(const Param& uv) const {
  const JetVec X = chart(Jet::variable(0, uv[0], 0), Jet::variable(1, uv[1], 0));
  return {X[0].value(), X[1].value(), X[2].value()};
}

FrameFields frame_fields(const Surface& s, const Vec3& at, int order, double tol_sing) {
  const int seed_order = order + 1 + frame_order_loss(s.ambient());
  if (seed_order > kMaxOrder) throw std::logic_error("frame_fields: order exceeds jet capacity");
  s.ambient().check_domain(at);
  const JetVec X = seed(at, seed_order);
  FrameFields F;
  F.amb = s.ambient().frame(X);
  F.U = s.defining(X);
  const Jet g1 = deriv(F.amb.E1, F.U);
  const Jet g2 = deriv(F.amb.E2, F.U);
  const Jet gT = deriv(F.amb.T, F.U);
  const double n0 = std::hypot(g1.value(), g2.value());
  if (!(n0 >= tol_sing))
    throw SingularPointError("|grad_b U| = " + std::to_string(n0) + " below tolerance");
  F.grad_norm = sqrt(g1 * g1 + g2 * g2);
  const Jet inv = 1.0 / F.grad_norm;
  const Jet c = g1 * inv, sn = g2 * inv;
  F.p = sn;
  F.q = -c;
  F.e1 = F.p * F.amb.E1 + F.q * F.amb.E2;
  F.e2 = c * F.amb.E1 + sn * F.amb.E2;
  F.alpha = -gT * inv;
  F.V = F.amb.T + F.alpha * F.e2;
  if (F.p.order() >= 1) {
    F.H = F.p * F.amb.om1 + F.q * F.amb.om2 + F.p * deriv(F.e1, F.q) - F.q * deriv(F.e1, F.p);
  } else {
    F.H = Jet(kNaN);
  }
  F.W = F.amb.W;
  const Jet pp = F.p * F.p - F.q * F.q, pq = 2.0 * F.p * F.q;
  F.a1 = pp * F.amb.a1 - pq * F.amb.a2;
  F.a2 = pq * F.amb.a1 + pp * F.amb.a2;
  return F;
}

double area_form(const Surface& s, const Param& uv, double tol_sing) {
  return area_form(s, uv, frame_fields(s, s.point(uv), 0, tol_sing));
}

double area_form(const Surface& s, const Param& uv, const FrameFields& F) {
  const ChartJet cj = chart_jet(s, uv);
  const Vec3 cu = components_at(F.amb, cj.Xu), cv = components_at(F.amb, cj.Xv);
  const double p = F.p.value(), q = F.q.value();
  const double e1u = p * cu[0] + q * cu[1];
  const double e1v = p * cv[0] + q * cv[1];
  return std::abs(cu[2] * e1v - cv[2] * e1u);
}

AdaptedFrameData adapted_frame(const Surface& s, const Param& uv, double tol_sing) {
  const Vec3 P = s.point(uv);
  const FrameFields F = frame_fields(s, P, 1, tol_sing);
  AdaptedFrameData d;
  for (int i = 0; i < 3; ++i) {
    d.e1[i] = F.e1[i].value();
    d.e2[i] = F.e2[i].value();
    d.T[i] = F.amb.T[i].value();
  }
  d.alpha = F.alpha.value();
  d.H = F.H.value();
  d.area_density = area_form(s, uv, tol_sing);
  return d;
}

Pushforward pushforward(const Surface& s, const Param& uv, double tol_sing) {
  return pushforward(s, uv, frame_fields(s, s.point(uv), 0, tol_sing));
}

Pushforward pushforward(const Surface& s, const Param& uv, const FrameFields& F) {
  const ChartJet cj = chart_jet(s, uv);
  Eigen::Matrix<double, 3, 2> A;
  Eigen::Vector3d e1, V;
  for (int i = 0; i < 3; ++i) {
    A(i, 0) = cj.Xu[i];
    A(i, 1) = cj.Xv[i];
    e1(i) = F.e1[i].value();
    V(i) = F.V[i].value();
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  Pushforward pf;
  pf.condition = sv(1) > 0 ? sv(0) / sv(1) : std::numeric_limits<double>::infinity();
  const Eigen::Vector2d a = svd.solve(e1);
  const Eigen::Vector2d b = svd.solve(V);
  pf.e1_u = a(0);
  pf.e1_v = a(1);
  pf.V_u = b(0);
  pf.V_v = b(1);
  pf.tangency_residual = std::max((A * a - e1).norm(), (A * b - V).norm());
  return pf;
}

SingularSet singular_set(const Surface& s) { return s.singular_set(); }

// ---- RotationalHeis --------------------------------------------------------

RotationalHeis::RotationalHeis(std::string name, ScalarFn f, Profile profile)
    : Surface(heisenberg()), name_(std::move(name)), f_(std::move(f)), profile_(std::move(profile)) {}

Jet RotationalHeis::defining(const JetVec& X) const {
  return f_(X[0] * X[0] + X[1] * X[1]) - X[2] * X[2];
}

JetVec RotationalHeis::chart(const Jet& u, const Jet& v) const {
  const auto rt = profile_.rt(v);
  return {rt[0] * cos(u), rt[0] * sin(u), rt[1]};
}

ParamDomain RotationalHeis::domain(double cutoff) const {
  ParamDomain d;
  d.lo = {0.0, profile_.lo};
  d.hi = {kTwoPi, profile_.hi};
  d.periodic = {true, false};
  if (cutoff <= 0.0) return d;
  auto radius = [&](double s) { return profile_.rt(Jet::variable(0, s, 0))[0].value(); };
  // r grows away from a singular end; solve r = cutoff by bisection.
  auto solve = [&](double end, double inner) {
    if (radius(inner) <= cutoff) throw std::invalid_argument("cutoff larger than the profile");
    double a = end, b = inner;
    for (int k = 0; k < 200; ++k) {
      const double m = 0.5 * (a + b);
      (radius(m) < cutoff ? a : b) = m;
    }
    return 0.5 * (a + b);
  };
  const double mid = 0.5 * (profile_.lo + profile_.hi);
  if (profile_.lo_singular) {
    d.lo[1] = solve(profile_.lo, mid);
    d.singular_lo[1] = profile_.lo;
  }
  if (profile_.hi_singular) {
    d.hi[1] = solve(profile_.hi, mid);
    d.singular_hi[1] = profile_.hi;
  }
  return d;
}

SingularSet RotationalHeis::singular_set() const {
  SingularSet s;
  if (profile_.lo_singular) s.points.push_back({0.0, profile_.lo});
  if (profile_.hi_singular) s.points.push_back({0.0, profile_.hi});
  if (!s.points.empty()) {
    s.kind = SingularSet::Kind::Points;
    s.description = "points on the t axis (r = 0)";
  }
  return s;
}

std::shared_ptr<RotationalHeis> make_shifted_sphere(double rho0, double lambda) {
  const double r2 = rho0 * rho0;
  if (!(rho0 > 0.0) || !(lambda >= 0.0) || !(lambda < r2))
    throw std::invalid_argument("shifted sphere needs rho0 > 0 and 0 <= lambda < rho0^2");
  const double psi_max = std::acos(lambda / r2);
  auto f = [r2, lambda](const Jet& s) {
    const Jet a = s + lambda;
    return 0.25 * (r2 * r2 - a * a);
  };
  RotationalHeis::Profile prof;
  prof.rt = [r2, lambda](const Jet& psi) -> std::array<Jet, 2> {
    return {sqrt(r2 * cos(psi) - lambda), 0.5 * r2 * sin(psi)};
  };
  prof.lo = -psi_max;
  prof.hi = psi_max;
  prof.lo_singular = prof.hi_singular = true;
  return std::make_shared<RotationalHeis>(lambda == 0.0 ? "heis_sphere" : "shifted_sphere", f,
                                          prof);
}

std::shared_ptr<RotationalHeis> make_heis_sphere(double rho0) {
  return make_shifted_sphere(rho0, 0.0);
}

std::shared_ptr<RotationalHeis> make_dilation_cone(double c, double r_lo, double r_hi) {
  if (!(r_lo >= 0.0) || !(r_hi > r_lo)) throw std::invalid_argument("cone needs 0 <= r_lo < r_hi");
  auto f = [c](const Jet& s) { return (c * c) * s * s; };
  RotationalHeis::Profile prof;
  prof.rt = [c](const Jet& r) -> std::array<Jet, 2> { return {r, c * r * r}; };
  prof.lo = r_lo;
  prof.hi = r_hi;
  prof.lo_singular = (r_lo == 0.0);
  prof.hi_singular = false;
  return std::make_shared<RotationalHeis>("dilation_cone", f, prof);
}

// ---- Cylinder, VerticalPlane -------------------------------------------------

Cylinder::Cylinder(double radius, double period)
    : Surface(heisenberg()), R_(radius), period_(period) {
  if (!(radius > 0.0) || !(period > 0.0))
    throw std::invalid_argument("cylinder needs positive radius and period");
}

Jet Cylinder::defining(const JetVec& X) const {
  return R_ * R_ - X[0] * X[0] - X[1] * X[1];
}

JetVec Cylinder::chart(const Jet& u, const Jet& v) const {
  return {R_ * cos(u), R_ * sin(u), v};
}

ParamDomain Cylinder::domain(double) const {
  ParamDomain d;
  d.lo = {0.0, 0.0};
  d.hi = {kTwoPi, period_};
  d.periodic = {true, true};
  return d;
}

CylinderGraph::CylinderGraph(double radius, double period, PlaneFn g)
    : Surface(heisenberg()), R_(radius), period_(period), g_(std::move(g)) {
  if (!(radius > 0.0) || !(period > 0.0))
    throw std::invalid_argument("cylinder needs positive radius and period");
}

Jet CylinderGraph::defining(const JetVec& X) const {
  Jet angle = atan2(X[1], X[0]);
  if (angle.value() < 0.0) angle += kTwoPi;  // match the chart range [0, 2 pi)
  const Jet r = R_ + g_(angle, X[2]);
  return r * r - X[0] * X[0] - X[1] * X[1];
}

JetVec CylinderGraph::chart(const Jet& u, const Jet& v) const {
  const Jet r = R_ + g_(u, v);
  return {r * cos(u), r * sin(u), v};
}

ParamDomain CylinderGraph::domain(double) const {
  ParamDomain d;
  d.lo = {0.0, 0.0};
  d.hi = {kTwoPi, period_};
  d.periodic = {true, true};
  return d;
}

SingularSet CylinderGraph::singular_set() const {
  SingularSet s;
  s.kind = SingularSet::Kind::Unknown;
  s.description = "not available in closed form; checked pointwise";
  return s;
}

VerticalPlane::VerticalPlane(double a, double b, double c, double half_width)
    : Surface(heisenberg()), a_(a), b_(b), c_(c), half_(half_width) {
  if (!(a * a + b * b > 0.0)) throw std::invalid_argument("vertical plane needs a^2 + b^2 > 0");
}

Jet VerticalPlane::defining(const JetVec& X) const { return a_ * X[0] + b_ * X[1] - c_; }

JetVec VerticalPlane::chart(const Jet& u, const Jet& v) const {
  const double n = std::hypot(a_, b_);
  const double x0 = a_ * c_ / (n * n), y0 = b_ * c_ / (n * n);
  return {x0 + (b_ / n) * u, y0 - (a_ / n) * u, v};
}

ParamDomain VerticalPlane::domain(double) const {
  ParamDomain d;
  d.lo = {-half_, -half_};
  d.hi = {half_, half_};
  return d;
}

// ---- graphs ------------------------------------------------------------------

GraphHeis::GraphHeis(std::string name, PlaneFn u, ParamDomain dom, PlaneGrad grad)
    : Surface(heisenberg()),
      name_(std::move(name)),
      u_(std::move(u)),
      dom_(dom),
      grad_(std::move(grad)) {}

Jet GraphHeis::defining(const JetVec& X) const { return u_(X[0], X[1]) - X[2]; }

JetVec GraphHeis::chart(const Jet& u, const Jet& v) const { return {u, v, u_(u, v)}; }

ParamDomain GraphHeis::domain(double) const { return dom_; }

SingularSet GraphHeis::singular_set() const {
  SingularSet s;
  s.kind = SingularSet::Kind::Unknown;
  s.description = "not available in closed form; checked pointwise";
  return s;
}

std::shared_ptr<GraphHeis> make_polynomial_graph(std::vector<Monomial> terms, ParamDomain dom) {
  auto u = [terms](const Jet& x, const Jet& y) {
    Jet r(0.0);
    for (const auto& m : terms) r += m.c * ipow(x, m.i) * ipow(y, m.j);
    return r;
  };
  auto grad = [terms](const Jet& x, const Jet& y) {
    std::array<Jet, 2> g{Jet(0.0), Jet(0.0)};
    for (const auto& m : terms) {
      if (m.i > 0) g[0] += (m.c * m.i) * ipow(x, m.i - 1) * ipow(y, m.j);
      if (m.j > 0) g[1] += (m.c * m.j) * ipow(x, m.i) * ipow(y, m.j - 1);
    }
    return g;
  };
  return std::make_shared<GraphHeis>("polynomial_graph", u, dom, grad);
}

FoliatedGraph::FoliatedGraph(int sign, double c, ParamDomain dom)
    : GraphHeis("foliated_graph",
                [sign, c](const Jet& x, const Jet& y) { return (-sign) * (x * y) + c; }, dom,
                [sign](const Jet& x, const Jet& y) {
                  return std::array<Jet, 2>{double(-sign) * y, double(-sign) * x};
                }),
      sign_(sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("foliated graph sign must be +-1");
  const int axis = sign == 1 ? 1 : 0;
  if (dom.lo[axis] <= 0.0 && dom.hi[axis] >= 0.0)
    throw std::invalid_argument("foliated graph domain meets its singular line");
}

SingularSet FoliatedGraph::singular_set() const {
  SingularSet s;
  s.kind = SingularSet::Kind::Curves;
  s.description = sign_ == 1 ? "the line y = 0" : "the line x = 0";
  return s;
}

// ---- tori in the sphere ---------------------------------------------------------

TorusS3::TorusS3(double rho1) : Surface(sphere3()), rho1_(rho1) {
  if (!(rho1 > 0.0 && rho1 < 1.0)) throw ChartDomainError("torus needs 0 < rho1 < 1");
}

Jet TorusS3::defining(const JetVec& X) const { return X[2] - rho1_; }

JetVec TorusS3::chart(const Jet& u, const Jet& v) const { return {u, v, Jet(rho1_)}; }

ParamDomain TorusS3::domain(double) const {
  ParamDomain d;
  d.lo = {0.0, 0.0};
  d.hi = {kTwoPi, kTwoPi};
  d.periodic = {true, true};
  return d;
}

TorusGraphS3::TorusGraphS3(double base, PlaneFn g)
    : Surface(sphere3()), base_(base), g_(std::move(g)) {
  if (!(base > 0.0 && base < 1.0)) throw ChartDomainError("torus needs 0 < rho1 < 1");
}

Jet TorusGraphS3::defining(const JetVec& X) const { return X[2] - base_ - g_(X[0], X[1]); }

JetVec TorusGraphS3::chart(const Jet& u, const Jet& v) const { return {u, v, base_ + g_(u, v)}; }

ParamDomain TorusGraphS3::domain(double) const {
  ParamDomain d;
  d.lo = {0.0, 0.0};
  d.hi = {kTwoPi, kTwoPi};
  d.periodic = {true, true};
  return d;
}

SingularSet TorusGraphS3::singular_set() const {
  SingularSet s;
  s.kind = SingularSet::Kind::Unknown;
  s.description = "not available in closed form; checked pointwise";
  return s;
}

RetargetedSurface::RetargetedSurface(SurfacePtr base, std::shared_ptr<const Ambient> ambient)
    : Surface(std::move(ambient)), base_(std::move(base)) {}

}  // namespace crlab
