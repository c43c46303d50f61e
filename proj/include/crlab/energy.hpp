#pragma once
// Surface quadrature against theta ^ e1: tensor rules over the chart,
// Richardson extrapolation across grid doublings, excision around the
// singular set and the integration-by-parts harness.

#include <functional>
#include <vector>

#include "crlab/invariants.hpp"

namespace crlab {

struct QuadratureSpec {
  int n1 = 64, n2 = 64;          // base grid; doubled extrapolation_levels times
  double cutoff_radius = 0.0;    // excision radius around singular points
  int extrapolation_levels = 1;  // 1, 2 or 3
  double rel_tol = 1e-8, abs_tol = 1e-12;
  // Off for integrands with compact support inside the chart, where the
  // rule already converges faster than any power of h.
  bool richardson = true;
};

void validate(const QuadratureSpec& q);

struct EnergyReport {
  double value = 0.0;
  double est_error = 0.0;
  double cutoff_radius = 0.0;
  bool converged = false;
  std::vector<double> levels;  // raw rule values, coarse to fine
};

// Integrand already multiplied by the chart measure (du dv).
using ChartIntegrand = std::function<double(const Param&)>;
// Density per unit theta ^ e1.
using JetDensity = std::function<double(const InvariantJet&)>;

EnergyReport integrate_chart(const Surface& s, const ChartIntegrand& f, const QuadratureSpec& q);
// m integrands evaluated together; f writes out[0..m).
using MultiIntegrand = std::function<void(const Param&, double* out)>;
std::vector<EnergyReport> integrate_chart_multi(const Surface& s, const MultiIntegrand& f, int m,
                                                const QuadratureSpec& q);
EnergyReport integrate(const Surface& s, const JetDensity& density, const QuadratureSpec& q,
                       int depth = 1);

EnergyReport energy_e1(const Surface& s, const QuadratureSpec& q);
EnergyReport energy_e2(const Surface& s, const QuadratureSpec& q);
EnergyReport area(const Surface& s, const QuadratureSpec& q);

// The same integral with the singular set excised at each radius.
struct CutoffStudy {
  std::vector<double> radii;
  std::vector<EnergyReport> reports;
  double spread = 0.0;     // max |value_i - value_j|
  bool robust = false;     // spread < tol * max(1, |value|)
  double log_slope = 0.0;  // d value / d log(1/radius) across the radii
};
CutoffStudy cutoff_study(const Surface& s, const JetDensity& density, const QuadratureSpec& q,
                         const std::vector<double>& radii = {1e-2, 1e-3, 1e-4},
                         double tol = 1e-4, int depth = 1);

// Compactly supported test function on the chart: f vanishes outside the
// parameter box `support`.
struct TestFunction {
  PlaneFn f;
  ParamDomain support;
};
// amp exp(1 - 1/(1 - d^2)) with d^2 = ((u - c0)/wu)^2 + ((v - c1)/wv)^2.
// Smooth with compact support.
TestFunction bump(const Param& c, double wu, double wv, double amp = 1.0);
inline TestFunction bump(const Param& c, double w) { return bump(c, w, w); }
TestFunction zero_function();

struct IbpResult {
  double lhs_e1 = 0, rhs_e1 = 0;  // int f1 e1(f2), -int [e1(f1) + 2 alpha f1] f2
  double lhs_V = 0, rhs_V = 0;    // int f1 V(f2),  -int [V(f1) - alpha H f1] f2
};
IbpResult ibp_check(const Surface& s, const TestFunction& f1, const TestFunction& f2,
                    const QuadratureSpec& q);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace crlab
