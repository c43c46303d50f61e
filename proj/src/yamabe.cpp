#include "crlab/yamabe.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "crlab/errors.hpp"

namespace crlab {
namespace {

void require_model(const InvariantJet& j, const char* what) {
  if (j.depth < 3) throw std::logic_error(std::string(what) + " needs a depth-3 jet");
  if (!j.torsion_free)
    throw std::domain_error(std::string(what) + " assumes a torsion-free, constant-W ambient");
}

// Rescaled ambients carry torsion and would also exhaust the jet order.
void require_model(const Surface& s, const char* what) {
  if (s.ambient().kind() == AmbientKind::Rescaled)
    throw std::domain_error(std::string(what) + " assumes a torsion-free, constant-W ambient");
}

// Truncated u / rho and the collar density at one boundary point.
struct Collar {
  ExpansionCoeffs k;
  double H, b, c;
  double u_over_rho(double r) const {
    return 1.0 + k.v * r + k.w * r * r + k.z * r * r * r + k.l * std::pow(r, 4) * std::log(r);
  }
  double measure(double r) const { return 1.0 - H * r - b * r * r + c * r * r * r; }
  double integrand(double r) const {
    const double q = u_over_rho(r);
    return measure(r) / (std::pow(r, 4) * q * q * q * q);
  }
};

Collar collar_at(const InvariantJet& j) {
  const CollarMeasure m = collar_measure(j);
  return {expansion_coeffs(j), j.H, m.b, m.c};
}

}  // namespace

ExpansionCoeffs expansion_coeffs(const InvariantJet& j) {
  require_model(j, "expansion_coeffs");
  const double a = j.alpha, H = j.H, R = 2.0 * j.W;
  const double a1 = j.Re_A11bar, a2 = j.Im_A11;
  ExpansionCoeffs k;
  k.v = -H / 6.0;
  const double e1v = -j.e1_H / 6.0, e1e1v = -j.e1e1_H / 6.0;
  k.w = -(2.0 / 3.0) * (j.e1_alpha + 2.0 * a * a + H * H / 6.0 + 3.0 * R / 16.0 - 0.5 * a2);
  const double v = k.v;
  const double twelve_z = 3.0 * e1e1v - 12.0 * j.V_alpha + 7.5 * R * v + 18.0 * a * e1v +
                          56.0 * v * j.e1_alpha + 264.0 * v * v * v + 40.0 * a * a * v -
                          6.0 * a1 * a - 10.0 * a2 * v;
  k.z = twelve_z / 12.0;
  k.l = el_residual_e2(j) / 5.0;
  return k;
}

ExpansionCoeffs expansion_coeffs(const Surface& s, const Param& uv) {
  require_model(s, "expansion_coeffs");
  return expansion_coeffs(jet_at(s, uv, 3));
}

VolumeDensities volume_densities(const InvariantJet& j) {
  require_model(j, "volume_densities");
  const double a = j.alpha, H = j.H;
  const double a1 = j.Re_A11bar, a2 = j.Im_A11;
  VolumeDensities d;
  d.v1 = -H / 3.0;
  d.v2 = (5.0 * j.e1_alpha + 10.0 * a * a + H * H / 6.0 - a2) / 3.0;
  d.v3 = j.e1e1_H / 6.0 + 4.0 * j.V_alpha + a * j.e1_H + 2.0 * H * j.e1_alpha +
         (4.0 / 27.0) * H * H * H + j.W * H / 3.0 + 2.0 * a1 * a;
  return d;
}

VolumeDensities volume_densities(const Surface& s, const Param& uv) {
  require_model(s, "volume_densities");
  return volume_densities(jet_at(s, uv, 3));
}

CollarMeasure collar_measure(const InvariantJet& j) {
  const double R = 2.0 * j.W, a2 = j.Im_A11;
  return {j.e1_alpha + 2.0 * j.alpha * j.alpha + 0.5 * R - a2, (R * j.H - 2.0 * j.H * a2) / 6.0};
}

RenormCoefficients renorm_coefficients(const Surface& s, const QuadratureSpec& q) {
  require_model(s, "renorm_coefficients");
  const auto reps = integrate_chart_multi(
      s,
      [&](const Param& uv, double* out) {
        const InvariantJet j = jet_at(s, uv, 3);
        const VolumeDensities d = volume_densities(j);
        const double m = j.area_density;
        out[0] = m / 3.0;
        out[1] = 0.5 * d.v1 * m;
        out[2] = d.v2 * m;
        out[3] = d.v3 * m;
      },
      4, q);
  RenormCoefficients r{reps[0].value, reps[1].value, reps[2].value, reps[3].value, 0.0};
  for (const auto& x : reps) r.est_error = std::max(r.est_error, x.est_error);
  return r;
}

RenormFit direct_volume_fit(const Surface& s, const std::vector<double>& eps_list,
                            const FitSpec& spec) {
  require_model(s, "direct_volume_fit");
  const int n = static_cast<int>(eps_list.size());
  for (int i = 0; i < n; ++i) {
    if (!(eps_list[i] > 0.0)) throw std::invalid_argument("eps values must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      throw std::invalid_argument("eps_list must decrease strictly");
  }
  int extra = spec.remainder_terms < 0 ? std::clamp(n - 6, 0, 3) : spec.remainder_terms;
  if (extra > 3) throw std::invalid_argument("at most three remainder terms");
  const int unknowns = 5 + extra;
  if (n < unknowns)
    throw FitIllConditionedError(std::to_string(n) + " eps values for " +
                                 std::to_string(unknowns) + " unknowns");
  if (eps_list.front() / eps_list.back() < 16.0)
    throw FitIllConditionedError("eps_list must span at least a factor 16");
  if (!(eps_list.front() < spec.rho_max))
    throw std::invalid_argument("eps values must lie below rho_max");

  // Breakpoints rho_max > eps_0 > ... ; panels of width <= 1/4 in log rho.
  std::vector<double> gx, gw;
  gauss_legendre(16, gx, gw);
  std::vector<double> edges{spec.rho_max};
  edges.insert(edges.end(), eps_list.begin(), eps_list.end());

  auto volumes = integrate_chart_multi(
      s,
      [&](const Param& uv, double* out) {
        const InvariantJet j = jet_at(s, uv, 3);
        const Collar c = collar_at(j);
        double acc = 0.0;
        for (int seg = 0; seg < n; ++seg) {
          const double s_hi = std::log(edges[seg]), s_lo = std::log(edges[seg + 1]);
          const int panels = std::max(1, static_cast<int>(std::ceil((s_hi - s_lo) / 0.25)));
          const double hp = (s_hi - s_lo) / panels;
          for (int p = 0; p < panels; ++p) {
            const double mid = s_lo + (p + 0.5) * hp;
            for (std::size_t g = 0; g < gx.size(); ++g) {
              const double r = std::exp(mid + 0.5 * hp * gx[g]);
              if (!(c.measure(r) > 0.0) || !(c.u_over_rho(r) > 0.0))
                throw NumericalError("collar degenerates before rho_max");
              acc += 0.5 * hp * gw[g] * c.integrand(r) * r;
            }
          }
          out[seg] = acc * j.area_density;
        }
      },
      n, spec.quadrature);

  RenormFit fit;
  fit.eps = eps_list;
  fit.eps_range = {eps_list.back(), eps_list.front()};
  fit.remainder_terms = extra;
  Eigen::MatrixXd X(n, unknowns);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    const double e = eps_list[i];
    y(i) = volumes[i].value;
    fit.volumes.push_back(y(i));
    const double cols[8] = {1.0 / (e * e * e), 1.0 / (e * e), 1.0 / e, std::log(1.0 / e), 1.0,
                            e * std::log(e), e, e * e};
    for (int k = 0; k < unknowns; ++k) X(i, k) = cols[k];
  }
  Eigen::VectorXd scale(unknowns);
  for (int k = 0; k < unknowns; ++k) scale(k) = X.col(k).cwiseAbs().maxCoeff();
  const Eigen::MatrixXd Xs = X * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Xs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto sv = svd.singularValues();
  fit.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1)
                                        : std::numeric_limits<double>::infinity();
  if (!(fit.condition <= 1e12))
    throw FitIllConditionedError("design matrix condition " + std::to_string(fit.condition));
  const Eigen::VectorXd c = svd.solve(y).cwiseQuotient(scale);
  fit.c0_fit = c(0);
  fit.c1_fit = c(1);
  fit.c2_fit = c(2);
  fit.L_fit = c(3);
  fit.V0_fit = c(4);
  fit.residual_norm = (X * c - y).norm() / y.norm();
  fit.within_tol = fit.residual_norm < spec.fit_tol;
  return fit;
}

EnergyReport exact_form_check(const Surface& s, const QuadratureSpec& q) {
  if (!s.closed()) throw std::invalid_argument("exact_form_check needs a closed surface");
  require_model(s, "exact_form_check");
  return integrate(
      s, [](const InvariantJet& j) { return da2_density(j) - 0.5 * volume_densities(j).v3; }, q,
      3);
}

namespace {

Jet cylinder_u(const Cylinder& cyl, const ExpansionCoeffs& k, const JetVec& X) {
  const Jet rho = cyl.radius() - sqrt(X[0] * X[0] + X[1] * X[1]);
  const Jet r2 = rho * rho;
  return rho + k.v * r2 + k.w * r2 * rho + k.z * r2 * r2 + k.l * r2 * r2 * rho * log(rho);
}

ExpansionCoeffs cylinder_coeffs(const Cylinder& cyl) { return expansion_coeffs(cyl, {0.0, 0.5}); }

void check_rho(const Cylinder& cyl, double rho) {
  if (!(rho > 0.0 && rho < cyl.radius())) throw std::invalid_argument("need 0 < rho < R");
}

}  // namespace

double cylinder_pde_residual(const Cylinder& cyl, double rho) {
  check_rho(cyl, rho);
  const ExpansionCoeffs k = cylinder_coeffs(cyl);
  const Ambient& m = cyl.ambient();
  const JetVec X = seed({cyl.radius() - rho, 0.0, 0.0}, 2);
  const FrameJet f = m.frame(X);
  const Jet u = cylinder_u(cyl, k, X);
  const Jet u1 = deriv(f.E1, u), u2 = deriv(f.E2, u);
  const double lap = deriv(f.E1, u1).value() + deriv(f.E2, u2).value() -
                     f.om1.value() * u2.value() + f.om2.value() * u1.value();
  const double R = 2.0 * m.webster_W(), uv = u.value();
  return u1.value() * u1.value() + u2.value() * u2.value() - 0.5 * uv * lap -
         0.125 * R * uv * uv;
}

double cylinder_pde_residual_fd(const Cylinder& cyl, double rho, double h) {
  check_rho(cyl, rho);
  if (cyl.ambient().kind() != AmbientKind::Heisenberg)
    throw std::domain_error("frame-flow stencil is written for the Heisenberg frame");
  const ExpansionCoeffs k = cylinder_coeffs(cyl);
  const Vec3 P{cyl.radius() - rho, 0.0, 0.0};
  auto u = [&](const Vec3& q) {
    return cylinder_u(cyl, k, seed(q, 0)).value();
  };
  // Left-invariant flows: E1 moves (x + s, y, t + y s), E2 moves (x, y + s, t - x s).
  auto f1 = [&](double s) { return u({P[0] + s, P[1], P[2] + P[1] * s}); };
  auto f2 = [&](double s) { return u({P[0], P[1] + s, P[2] - P[0] * s}); };
  const double u0 = u(P);
  const double d1 = (f1(h) - f1(-h)) / (2 * h), d2 = (f2(h) - f2(-h)) / (2 * h);
  const double dd1 = (f1(h) - 2 * u0 + f1(-h)) / (h * h);
  const double dd2 = (f2(h) - 2 * u0 + f2(-h)) / (h * h);
  return d1 * d1 + d2 * d2 - 0.5 * u0 * (dd1 + dd2);
}

std::vector<CoefficientRow> coefficient_table(const Surface& s, int n1, int n2, double cutoff) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("table needs n1, n2 >= 1");
  require_model(s, "coefficient_table");
  const ParamDomain d = s.domain(cutoff);
  std::vector<CoefficientRow> rows;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const double fu = d.periodic[0] ? double(i) / n1 : (i + 0.5) / n1;
      const double fv = d.periodic[1] ? double(j) / n2 : (j + 0.5) / n2;
      const Param uv{d.lo[0] + fu * (d.hi[0] - d.lo[0]), d.lo[1] + fv * (d.hi[1] - d.lo[1])};
      const InvariantJet jet = jet_at(s, uv, 3);
      rows.push_back({uv, expansion_coeffs(jet), volume_densities(jet)});
    }
  return rows;
}

}  // namespace crlab
