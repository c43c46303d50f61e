#include "crlab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "crlab/errors.hpp"
#include "crlab/parallel.hpp"

namespace crlab {
namespace {

// Nodes and weights along one chart direction.  Periodic: trapezoid.
// Otherwise midpoint, in y = log((x - a)/(b - x)) (or its one-sided form)
// when an end sits at distance > 0 from a singular end a or b.
struct Axis {
  std::vector<double> x, w;
};

Axis make_axis(const ParamDomain& d, int k, int n) {
  Axis ax;
  ax.x.resize(n);
  ax.w.resize(n);
  const double lo = d.lo[k], hi = d.hi[k];
  if (d.periodic[k]) {
    const double h = (hi - lo) / n;
    for (int i = 0; i < n; ++i) {
      ax.x[i] = lo + i * h;
      ax.w[i] = h;
    }
    return ax;
  }
  const double a = d.singular_lo[k], b = d.singular_hi[k];
  const bool ga = std::isfinite(a) && lo > a, gb = std::isfinite(b) && hi < b;
  std::function<double(double)> to_y, to_x, jac;
  if (ga && gb) {
    to_y = [=](double x) { return std::log((x - a) / (b - x)); };
    to_x = [=](double y) { return (a + b * std::exp(y)) / (1.0 + std::exp(y)); };
    jac = [=](double x) { return (x - a) * (b - x) / (b - a); };
  } else if (ga) {
    to_y = [=](double x) { return std::log(x - a); };
    to_x = [=](double y) { return a + std::exp(y); };
    jac = [=](double x) { return x - a; };
  } else if (gb) {
    to_y = [=](double x) { return -std::log(b - x); };
    to_x = [=](double y) { return b - std::exp(-y); };
    jac = [=](double x) { return b - x; };
  } else {
    to_y = to_x = [](double x) { return x; };
    jac = [](double) { return 1.0; };
  }
  const double y0 = to_y(lo), h = (to_y(hi) - y0) / n;
  for (int i = 0; i < n; ++i) {
    ax.x[i] = to_x(y0 + (i + 0.5) * h);
    ax.w[i] = h * jac(ax.x[i]);
  }
  return ax;
}

// Tensor rule for m integrands at once; one pairwise sum per component.
std::vector<double> rule(const MultiIntegrand& f, int m, const ParamDomain& d, int n1, int n2) {
  const Axis a = make_axis(d, 0, n1), b = make_axis(d, 1, n2);
  const std::size_t n = static_cast<std::size_t>(n1) * n2;
  std::vector<double> vals(n * m);
  parallel_for(n, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / n2), j = static_cast<int>(idx % n2);
    std::vector<double> out(m);
    f({a.x[i], b.x[j]}, out.data());
    const double wt = a.w[i] * b.w[j];
    for (int c = 0; c < m; ++c) vals[c * n + idx] = out[c] * wt;
  });
  std::vector<double> r(m);
  for (int c = 0; c < m; ++c) r[c] = pairwise_sum(vals.data() + c * n, n);
  return r;
}

EnergyReport finish(std::vector<double> levels, const QuadratureSpec& q, bool spectral) {
  const int L = q.extrapolation_levels;
  EnergyReport rep;
  rep.cutoff_radius = q.cutoff_radius;
  rep.levels = std::move(levels);
  if (spectral || !q.richardson) {
    rep.value = rep.levels[L];
    rep.est_error = std::abs(rep.levels[L] - rep.levels[L - 1]);
  } else {
    // Midpoint error expands in even powers of h.
    std::vector<std::vector<double>> T(L + 1);
    for (int k = 0; k <= L; ++k) {
      T[k].push_back(rep.levels[k]);
      for (int j = 1; j <= k; ++j) {
        const double fac = std::pow(4.0, j) - 1.0;
        T[k].push_back(T[k][j - 1] + (T[k][j - 1] - T[k - 1][j - 1]) / fac);
      }
    }
    rep.value = T[L][L];
    rep.est_error = std::abs(T[L][L] - T[L][L - 1]);
  }
  rep.converged = rep.est_error < q.rel_tol * std::abs(rep.value) + q.abs_tol;
  return rep;
}

bool inside(const ParamDomain& inner, const ParamDomain& outer) {
  for (int k = 0; k < 2; ++k)
    if (!(inner.lo[k] > outer.lo[k] && inner.hi[k] < outer.hi[k])) return false;
  return true;
}

struct Deriv1 {
  double f, fu, fv;
};
Deriv1 eval1(const PlaneFn& f, const Param& uv) {
  const Jet r = f(Jet::variable(0, uv[0], 1), Jet::variable(1, uv[1], 1));
  return {r.value(), r.coeff(1, 0, 0), r.coeff(0, 1, 0)};
}

}  // namespace

std::vector<EnergyReport> integrate_chart_multi(const Surface& s, const MultiIntegrand& f, int m,
                                                const QuadratureSpec& q) {
  validate(q);
  const ParamDomain d = s.domain(q.cutoff_radius);
  std::vector<std::vector<double>> levels(m);
  for (int k = 0; k <= q.extrapolation_levels; ++k) {
    const auto r = rule(f, m, d, q.n1 << k, q.n2 << k);
    for (int c = 0; c < m; ++c) levels[c].push_back(r[c]);
  }
  std::vector<EnergyReport> out;
  for (int c = 0; c < m; ++c)
    out.push_back(finish(std::move(levels[c]), q, d.periodic[0] && d.periodic[1]));
  return out;
}

void validate(const QuadratureSpec& q) {
  if (q.n1 < 8 || q.n2 < 8) throw std::invalid_argument("quadrature grid needs n1, n2 >= 8");
  if (q.extrapolation_levels < 1 || q.extrapolation_levels > 3)
    throw std::invalid_argument("extrapolation_levels must be 1, 2 or 3");
  if (!(q.cutoff_radius >= 0.0)) throw std::invalid_argument("cutoff_radius must be >= 0");
  if (!(q.rel_tol >= 0.0) || !(q.abs_tol >= 0.0))
    throw std::invalid_argument("tolerances must be >= 0");
}

EnergyReport integrate_chart(const Surface& s, const ChartIntegrand& f, const QuadratureSpec& q) {
  return integrate_chart_multi(s, [&](const Param& uv, double* out) { out[0] = f(uv); }, 1, q)[0];
}

EnergyReport integrate(const Surface& s, const JetDensity& density, const QuadratureSpec& q,
                       int depth) {
  return integrate_chart(
      s,
      [&](const Param& uv) {
        const InvariantJet j = jet_at(s, uv, depth);
        return density(j) * j.area_density;
      },
      q);
}

EnergyReport energy_e1(const Surface& s, const QuadratureSpec& q) {
  return integrate(s, da1_density, q, 1);
}

EnergyReport energy_e2(const Surface& s, const QuadratureSpec& q) {
  return integrate(s, da2_density, q, 1);
}

EnergyReport area(const Surface& s, const QuadratureSpec& q) {
  return integrate_chart(s, [&](const Param& uv) { return area_form(s, uv); }, q);
}

CutoffStudy cutoff_study(const Surface& s, const JetDensity& density, const QuadratureSpec& q,
                         const std::vector<double>& radii, double tol, int depth) {
  CutoffStudy st;
  st.radii = radii;
  double vmax = 0.0;
  for (double r : radii) {
    QuadratureSpec qr = q;
    qr.cutoff_radius = r;
    st.reports.push_back(integrate(s, density, qr, depth));
    vmax = std::max(vmax, std::abs(st.reports.back().value));
  }
  for (const auto& a : st.reports)
    for (const auto& b : st.reports) st.spread = std::max(st.spread, std::abs(a.value - b.value));
  st.robust = std::isfinite(st.spread) && st.spread < tol * std::max(1.0, vmax);
  if (radii.size() >= 2)
    st.log_slope = (st.reports.back().value - st.reports.front().value) /
                   std::log(radii.front() / radii.back());
  return st;
}

TestFunction bump(const Param& c, double wu, double wv, double amp) {
  if (!(wu > 0.0) || !(wv > 0.0)) throw std::invalid_argument("bump widths must be positive");
  TestFunction t;
  t.support.lo = {c[0] - wu, c[1] - wv};
  t.support.hi = {c[0] + wu, c[1] + wv};
  t.f = [c, wu, wv, amp](const Jet& u, const Jet& v) -> Jet {
    const Jet du = (u - c[0]) / wu, dv = (v - c[1]) / wv;
    const Jet d2 = du * du + dv * dv;
    if (d2.value() >= 1.0) return 0.0 * d2;
    return amp * exp(1.0 - 1.0 / (1.0 - d2));
  };
  return t;
}

TestFunction zero_function() {
  TestFunction t;
  t.f = [](const Jet& u, const Jet&) { return 0.0 * u; };
  t.support.lo = {0.0, 0.0};
  t.support.hi = {0.0, 0.0};
  return t;
}

IbpResult ibp_check(const Surface& s, const TestFunction& f1, const TestFunction& f2,
                    const QuadratureSpec& q) {
  const ParamDomain d = s.domain(q.cutoff_radius);
  ParamDomain both;
  bool empty = false;
  for (int k = 0; k < 2; ++k) {
    both.lo[k] = std::max(f1.support.lo[k], f2.support.lo[k]);
    both.hi[k] = std::min(f1.support.hi[k], f2.support.hi[k]);
    empty = empty || !(both.hi[k] > both.lo[k]);
  }
  if (empty) return {};
  if (!inside(f1.support, d) || !inside(f2.support, d))
    throw SupportError("test function support touches the chart boundary or excised region");

  auto in_box = [&](const Param& uv) {
    return uv[0] >= both.lo[0] && uv[0] <= both.hi[0] && uv[1] >= both.lo[1] &&
           uv[1] <= both.hi[1];
  };
  // The four integrands share one frame evaluation per node.
  auto integrand = [&](const Param& uv, double* out) {
    out[0] = out[1] = out[2] = out[3] = 0.0;
    if (!in_box(uv)) return;
    const InvariantJet j = jet_at(s, uv, 1);
    const Pushforward pf = pushforward(s, uv);
    const Deriv1 a = eval1(f1.f, uv), b = eval1(f2.f, uv);
    const double e1a = pf.e1_u * a.fu + pf.e1_v * a.fv;
    const double e1b = pf.e1_u * b.fu + pf.e1_v * b.fv;
    const double Va = pf.V_u * a.fu + pf.V_v * a.fv;
    const double Vb = pf.V_u * b.fu + pf.V_v * b.fv;
    const double m = j.area_density;
    out[0] = a.f * e1b * m;
    out[1] = -(e1a + 2.0 * j.alpha * a.f) * b.f * m;
    out[2] = a.f * Vb * m;
    out[3] = -(Va - j.alpha * j.H * a.f) * b.f * m;
  };
  const auto rep = integrate_chart_multi(s, integrand, 4, q);
  return {rep[0].value, rep[1].value, rep[2].value, rep[3].value};
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 0 ? 1.0 : p1, pn1 = p0;
      dp = n * (z * pn - pn1) / (z * z - 1.0);
      const double dz = pn / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace crlab
