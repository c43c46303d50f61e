#pragma once
// One-parameter family scans and finite-difference checks of the first
// variation formulas d/ds E(Sigma_s) = int Eps h theta ^ e1, h = f - alpha g.

#include <functional>
#include <string>
#include <vector>

#include "crlab/energy.hpp"

namespace crlab {

enum class ScanTarget {
  E1,          // energy
  E2,
  ResidualE1,  // signed residual at the probe point
  ResidualE2,
  HcrAt,       // signed Hcr at the probe point
  SupHcr       // max |Hcr| over a sample grid
};
ScanTarget parse_scan_target(const std::string& s);
std::string to_string(ScanTarget t);

using SurfaceGenerator = std::function<SurfacePtr(double)>;

struct ScanSpec {
  ScanTarget target = ScanTarget::ResidualE2;
  QuadratureSpec quadrature{32, 32, 0.0, 1};
  Param probe{0.37, 0.5};  // fractional position in the chart domain
  int sup_samples = 1000;  // SupHcr: about this many interior points
  double cutoff = 0.0;     // domain(cutoff) used for probes and samples
  double tol = 1e-10;      // width of the refined bracket
  // Step (relative to max(1, |p|)) of the fourth-order central difference
  // that locates a minimum as a zero of the derivative.
  double deriv_step = 1e-3;
};

struct CriticalPoint {
  double param = 0.0;
  double value = 0.0;      // target at param
  std::string kind;        // "root" or "minimum"
  double bracket_lo = 0.0, bracket_hi = 0.0;
};

struct FamilyScan {
  std::vector<double> params, values;  // NaN where evaluation failed
  std::vector<std::string> errors;     // empty when the evaluation succeeded
  std::vector<CriticalPoint> critical;
};

double scan_value(const Surface& s, const ScanSpec& spec);

// Sign changes are bisected; interior local minima of |value| are refined
// by golden section (SupHcr) or as zeros of the central derivative.
FamilyScan scan_family(const SurfaceGenerator& gen, const std::vector<double>& grid,
                       const ScanSpec& spec);

enum class VariationTarget { E1, E2, L };
VariationTarget parse_variation_target(const std::string& s);

struct VariationSpec {
  VariationTarget target = VariationTarget::E2;
  std::vector<double> steps{1e-3};
  QuadratureSpec quadrature{64, 64, 0.0, 1};
  double tol_var = 1e-3;
};

struct VariationCheck {
  double fd_derivative = 0.0;       // at the smallest step
  double formula_derivative = 0.0;
  double step = 0.0;
  std::vector<double> steps, fd, mismatch;
  std::vector<double> ratios;       // mismatch[k] / mismatch[k+1]
  bool order_ok = false;            // every ratio >= 3.5 (needs >= 3 steps)
  bool passed = false;              // |fd - formula| <= tol_var max(1, |formula|)
};

// base: TorusS3, Cylinder, or a GraphHeis carrying its gradient.  Sigma_s is the zero
// set of U + s Phi with Phi chosen so that its first-order displacement is
// X = f e2 + g T.
VariationCheck first_variation_check(const Surface& base, const TestFunction& f,
                                     const TestFunction& g, const VariationSpec& spec);

// The perturbed surface Sigma_s used above.
SurfacePtr perturbed_surface(const Surface& base, const TestFunction& f, const TestFunction& g,
                             double s);

}  // namespace crlab
