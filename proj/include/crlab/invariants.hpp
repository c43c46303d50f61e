#pragma once
// Pointwise invariants of a surface: alpha, H and their derivatives along
// e1 and V = T + alpha e2, the CR area densities, the second fundamental
// form coefficients and the Euler-Lagrange residuals of E1 and E2.

#include "crlab/surfaces.hpp"

namespace crlab {

inline constexpr double kTolHcr = 1e-9;

// Derivative depth of a jet: 1 gives alpha, H, e1(alpha), V(alpha) and the
// densities; 2 adds e1(H), V(H), e1e1(alpha) and the h-derivatives; 3 adds
// the third-order data used by the residuals and v3.
struct InvariantJet {
  int depth = 0;
  Param params{};
  Vec3 point{};
  double area_density = 0.0;  // theta ^ e1 against the chart measure

  double alpha = 0, H = 0, W = 0;
  double e1_alpha = 0, V_alpha = 0;
  double e1_H = 0, V_H = 0, e1e1_alpha = 0;
  double e1e1_H = 0, e1V_H = 0;
  double hcr = 0, e1_Hcr = 0, V_Hcr = 0, e1e1_Hcr = 0;
  double h111 = 0, h110 = 0, h100 = 0;
  // |Hcr|^{-1}(h10 h111 + h11^2 h111 / 3 + h11 h110 + 3/2 h100); NaN when
  // |Hcr| <= tol_hcr.
  double frak_f = 0;
  double e1_sqrt_hcr_frak_f = 0;  // e1(|Hcr|^{1/2} frak_f)
  double e1_hcr_frak_f = 0;       // e1(|Hcr| frak_f), from the expanded form
  // Torsion data relative to (e1, e2): Im A11, Re A11bar and the
  // derivative terms entering h00.  Zero for the model ambients.
  double Im_A11 = 0, Re_A11bar = 0, E1_im = 0, E1_re = 0;
  bool torsion_free = true;
};

InvariantJet jet_at(const Surface& s, const Param& uv, int depth = 3,
                    double tol_hcr = kTolHcr);
// Same data at an ambient point on the surface (no chart data).
InvariantJet jet_at_point(const Surface& s, const Vec3& p, int depth = 3,
                          double tol_hcr = kTolHcr);

double hcr(const InvariantJet& j);
double da1_density(const InvariantJet& j);
double da2_density(const InvariantJet& j);

struct HCoefficients {
  double h11, h10, h00;
};
HCoefficients h_coefficients(const InvariantJet& j);

struct HDerivatives {
  double h111, h110, h100;
};
HDerivatives h_derivatives(const InvariantJet& j);

double frak_f(const InvariantJet& j, double tol_hcr = kTolHcr);

// e1e1(alpha) + 6 alpha e1(alpha) - V(H) + alpha H^2 + 4 alpha^3 + 2 W alpha
double ode_residual(const InvariantJet& j);

// Residual of E1 in divergence form and in the expanded alternative form.
double el_residual_e1(const InvariantJet& j, double tol_hcr = kTolHcr);
double el_residual_e1_alt(const InvariantJet& j, double tol_hcr = kTolHcr);
double el_residual_e2(const InvariantJet& j);

struct ELResiduals {
  bool epsilon1_defined = false;
  double epsilon1 = 0.0, epsilon1_alt = 0.0;
  double epsilon2 = 0.0;
  double hcr = 0.0;
};
ELResiduals el_residuals(const InvariantJet& j, double tol_hcr = kTolHcr);

}  // namespace crlab
