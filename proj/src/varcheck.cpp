#include "crlab/varcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "crlab/errors.hpp"
#include "crlab/yamabe.hpp"

namespace crlab {
namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

Param at_fraction(const ParamDomain& d, double fu, double fv) {
  return {d.lo[0] + fu * (d.hi[0] - d.lo[0]), d.lo[1] + fv * (d.hi[1] - d.lo[1])};
}

double sup_hcr(const Surface& s, const ScanSpec& spec) {
  const ParamDomain d = s.domain(spec.cutoff);
  const int n = std::max(2, static_cast<int>(std::ceil(std::sqrt(double(spec.sup_samples)))));
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m = std::max(m, std::abs(jet_at(s, at_fraction(d, (i + 0.5) / n, (j + 0.5) / n), 1).hcr));
  return m;
}

// Bisection on a sign change of f over [a, b].
double bisect(const std::function<double(double)>& f, double a, double b, double fa,
              double tol) {
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double m = 0.5 * (a + b), fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 300 && b - a > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

ScanTarget parse_scan_target(const std::string& s) {
  if (s == "e1") return ScanTarget::E1;
  if (s == "e2") return ScanTarget::E2;
  if (s == "residual_e1") return ScanTarget::ResidualE1;
  if (s == "residual_e2") return ScanTarget::ResidualE2;
  if (s == "hcr") return ScanTarget::HcrAt;
  if (s == "sup_hcr") return ScanTarget::SupHcr;
  throw InputError("unknown scan target '" + s + "'");
}

std::string to_string(ScanTarget t) {
  switch (t) {
    case ScanTarget::E1: return "e1";
    case ScanTarget::E2: return "e2";
    case ScanTarget::ResidualE1: return "residual_e1";
    case ScanTarget::ResidualE2: return "residual_e2";
    case ScanTarget::HcrAt: return "hcr";
    case ScanTarget::SupHcr: return "sup_hcr";
  }
  return "?";
}

double scan_value(const Surface& s, const ScanSpec& spec) {
  const Param p = at_fraction(s.domain(spec.cutoff), spec.probe[0], spec.probe[1]);
  QuadratureSpec q = spec.quadrature;
  q.cutoff_radius = spec.cutoff;
  switch (spec.target) {
    case ScanTarget::E1: return energy_e1(s, q).value;
    case ScanTarget::E2: return energy_e2(s, q).value;
    case ScanTarget::ResidualE1: return el_residual_e1(jet_at(s, p, 3));
    case ScanTarget::ResidualE2: return el_residual_e2(jet_at(s, p, 3));
    case ScanTarget::HcrAt: return jet_at(s, p, 1).hcr;
    case ScanTarget::SupHcr: return sup_hcr(s, spec);
  }
  return kNaN;
}

FamilyScan scan_family(const SurfaceGenerator& gen, const std::vector<double>& grid,
                       const ScanSpec& spec) {
  if (grid.size() < 2) throw std::invalid_argument("scan grid needs at least two parameters");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("scan grid must increase");
  auto eval = [&](double p) { return scan_value(*gen(p), spec); };

  FamilyScan sc;
  sc.params = grid;
  for (double p : grid) {
    try {
      sc.values.push_back(eval(p));
      sc.errors.emplace_back();
    } catch (const std::exception& e) {
      sc.values.push_back(kNaN);
      sc.errors.emplace_back(e.what());
    }
  }
  const auto& v = sc.values;
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!std::isfinite(v[i]) || !std::isfinite(v[i + 1])) continue;
    if (v[i] == 0.0) {
      sc.critical.push_back({grid[i], 0.0, "root", grid[i], grid[i]});
    } else if ((v[i] < 0) != (v[i + 1] < 0) && v[i + 1] != 0.0) {
      const double r = bisect(eval, grid[i], grid[i + 1], v[i], spec.tol);
      sc.critical.push_back({r, eval(r), "root", grid[i], grid[i + 1]});
    }
  }
  if (std::isfinite(v[n - 1]) && v[n - 1] == 0.0)
    sc.critical.push_back({grid[n - 1], 0.0, "root", grid[n - 1], grid[n - 1]});

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!std::isfinite(v[i - 1]) || !std::isfinite(v[i]) || !std::isfinite(v[i + 1])) continue;
    const double a = std::abs(v[i - 1]), b = std::abs(v[i]), c = std::abs(v[i + 1]);
    const bool sign_change = (v[i - 1] < 0) != (v[i] < 0) || (v[i] < 0) != (v[i + 1] < 0);
    if (!(b < a && b <= c) || sign_change || v[i] == 0.0) continue;
    const double lo = grid[i - 1], hi = grid[i + 1];
    double r;
    if (spec.target == ScanTarget::SupHcr) {
      r = golden_min(eval, lo, hi, spec.tol);
    } else {
      const double sgn = v[i] < 0 ? -1.0 : 1.0;
      auto dval = [&](double p) {
        const double h = spec.deriv_step * std::max(1.0, std::abs(p));
        const double d1 = eval(p + h) - eval(p - h), d2 = eval(p + 2 * h) - eval(p - 2 * h);
        return sgn * (8.0 * d1 - d2) / (12.0 * h);
      };
      const double dlo = dval(lo), dhi = dval(hi);
      if (!((dlo < 0) && (dhi > 0))) continue;
      r = bisect(dval, lo, hi, dlo, spec.tol);
    }
    sc.critical.push_back({r, eval(r), "minimum", lo, hi});
  }
  std::sort(sc.critical.begin(), sc.critical.end(),
            [](const CriticalPoint& x, const CriticalPoint& y) { return x.param < y.param; });
  return sc;
}

VariationTarget parse_variation_target(const std::string& s) {
  if (s == "e1") return VariationTarget::E1;
  if (s == "e2") return VariationTarget::E2;
  if (s == "L" || s == "l") return VariationTarget::L;
  throw InputError("unknown variation target '" + s + "'");
}

SurfacePtr perturbed_surface(const Surface& base, const TestFunction& f, const TestFunction& g,
                             double s) {
  if (const auto* torus = dynamic_cast<const TorusS3*>(&base)) {
    // U = rho1 - c; alpha = 0 and |grad_b U| is constant along the torus.
    const double G = frame_fields(base, base.point({0.0, 0.0}), 1).grad_norm.value();
    const PlaneFn ff = f.f;
    return std::make_shared<TorusGraphS3>(
        torus->rho1(), [=](const Jet& u, const Jet& v) { return (s * G) * ff(u, v); });
  }
  if (const auto* graph = dynamic_cast<const GraphHeis*>(&base)) {
    if (!graph->gradient())
      throw std::invalid_argument("graph perturbation needs the height gradient");
    // U = u - t, |grad_b U| = G = 1 / alpha, so delta u = g - G f.
    const PlaneFn u = graph->height_fn(), ff = f.f, gg = g.f;
    const PlaneGrad du = graph->gradient();
    auto h = [=](const Jet& x, const Jet& y) {
      const auto d = du(x, y);
      const Jet G = sqrt(square(d[0] - y) + square(d[1] + x));
      return u(x, y) + s * (gg(x, y) - G * ff(x, y));
    };
    return std::make_shared<GraphHeis>(graph->family(), h, graph->domain());
  }
  if (const auto* cyl = dynamic_cast<const Cylinder*>(&base)) {
    // e2 is the inward unit radial field and T is tangent, so r = R - s f.
    const PlaneFn ff = f.f;
    return std::make_shared<CylinderGraph>(cyl->radius(), cyl->period(),
                                           [=](const Jet& u, const Jet& v) { return -s * ff(u, v); });
  }
  throw std::invalid_argument("variation check supports tori in the sphere, cylinders and graphs");
}

VariationCheck first_variation_check(const Surface& base, const TestFunction& f,
                                     const TestFunction& g, const VariationSpec& spec) {
  if (spec.steps.empty()) throw std::invalid_argument("need at least one step");
  for (double h : spec.steps)
    if (!(h > 0.0)) throw StepSizeError("variation steps must be positive");
  const ParamDomain d = base.domain();
  for (const TestFunction* t : {&f, &g}) {
    if (!(t->support.hi[0] > t->support.lo[0])) continue;  // zero function
    for (int k = 0; k < 2; ++k)
      if (!(t->support.lo[k] > d.lo[k] && t->support.hi[k] < d.hi[k]))
        throw SupportError("test function support touches the chart boundary");
  }
  QuadratureSpec q = spec.quadrature;
  if (!base.closed()) q.richardson = false;

  auto energy = [&](const Surface& s) {
    switch (spec.target) {
      case VariationTarget::E1: return energy_e1(s, q).value;
      case VariationTarget::E2: return energy_e2(s, q).value;
      case VariationTarget::L: return renorm_coefficients(s, q).L;
    }
    return kNaN;
  };
  VariationCheck vc;
  const EnergyReport formula = integrate_chart(
      base,
      [&](const Param& uv) {
        const double fv = f.f(Jet(uv[0]), Jet(uv[1])).value();
        const double gv = g.f(Jet(uv[0]), Jet(uv[1])).value();
        if (fv == 0.0 && gv == 0.0) return 0.0;
        const InvariantJet j = jet_at(base, uv, 3);
        const double h = fv - j.alpha * gv;
        double eps = 0.0;
        switch (spec.target) {
          case VariationTarget::E1: eps = el_residual_e1(j); break;
          case VariationTarget::E2: eps = el_residual_e2(j); break;
          case VariationTarget::L: eps = 10.0 * expansion_coeffs(j).l; break;
        }
        return eps * h * j.area_density;
      },
      q);
  vc.formula_derivative = formula.value;

  std::vector<double> steps = spec.steps;
  std::sort(steps.begin(), steps.end(), std::greater<>());
  for (double h : steps) {
    const double ep = energy(*perturbed_surface(base, f, g, h));
    const double em = energy(*perturbed_surface(base, f, g, -h));
    vc.steps.push_back(h);
    vc.fd.push_back((ep - em) / (2.0 * h));
    vc.mismatch.push_back(std::abs(vc.fd.back() - vc.formula_derivative));
  }
  vc.step = vc.steps.back();
  vc.fd_derivative = vc.fd.back();
  for (std::size_t k = 0; k + 1 < vc.mismatch.size(); ++k)
    vc.ratios.push_back(vc.mismatch[k] / vc.mismatch[k + 1]);
  vc.order_ok = vc.ratios.size() >= 2 &&
                std::all_of(vc.ratios.begin(), vc.ratios.end(), [](double r) { return r >= 3.5; });
  vc.passed = vc.mismatch.back() <= spec.tol_var * std::max(1.0, std::abs(vc.formula_derivative));
  return vc;
}

}  // namespace crlab
