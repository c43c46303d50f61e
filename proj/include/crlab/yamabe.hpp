#pragma once
// Formal solution u = rho + v rho^2 + w rho^3 + z rho^4 + l rho^5 log rho of
// the singular CR Yamabe problem near a boundary surface, the volume
// expansion densities and the renormalized-volume coefficients.
//
// rho is the parameter along the contact geodesics leaving the surface in
// the e2 direction.  Every formula below assumes zero torsion and constant
// Webster curvature, so derivatives of the torsion and of R = 2W drop out.

#include <vector>

#include "crlab/energy.hpp"

namespace crlab {

struct ExpansionCoeffs {
  double v = 0, w = 0, z = 0, l = 0;
};
ExpansionCoeffs expansion_coeffs(const InvariantJet& j);
ExpansionCoeffs expansion_coeffs(const Surface& s, const Param& uv);

// u^-4 <e2, nu> d mu = rho^-4 (1 + v1 rho + v2 rho^2 + v3 rho^3 + ...) d rho theta ^ e1
struct VolumeDensities {
  double v1 = 0, v2 = 0, v3 = 0;
};
VolumeDensities volume_densities(const InvariantJet& j);
VolumeDensities volume_densities(const Surface& s, const Param& uv);

// Coefficients of the pulled-back measure <e2, nu> d mu_{Sigma_rho} d rho
// = (1 - H rho - b rho^2 + c rho^3) d rho theta ^ e1 along the collar.
struct CollarMeasure {
  double b = 0, c = 0;
};
CollarMeasure collar_measure(const InvariantJet& j);

struct RenormCoefficients {
  double c0 = 0, c1 = 0, c2 = 0, L = 0;
  double est_error = 0;  // largest quadrature error estimate of the four
};
RenormCoefficients renorm_coefficients(const Surface& s, const QuadratureSpec& q);

struct FitSpec {
  QuadratureSpec quadrature{32, 32, 0.0, 1};
  double rho_max = 0.05;
  // Extra columns eps log eps, eps, eps^2 for the o(1) remainder; -1 picks
  // min(3, #eps - 6).
  int remainder_terms = -1;
  double fit_tol = 1e-8;
};

struct RenormFit {
  double c0_fit = 0, c1_fit = 0, c2_fit = 0, L_fit = 0, V0_fit = 0;
  double residual_norm = 0;  // |X c - y| / |y|
  bool within_tol = false;
  double condition = 0;      // of the column-scaled design matrix
  int remainder_terms = 0;
  std::pair<double, double> eps_range{0, 0};
  std::vector<double> eps, volumes;
};

// Vol({eps < rho < rho_max}) from the truncated expansion, integrated in rho
// by Gauss-Legendre panels in log rho, then a least-squares fit of
// c0 eps^-3 + c1 eps^-2 + c2 eps^-1 + L log(1/eps) + V0 (+ remainder).
// eps_list must decrease strictly.
RenormFit direct_volume_fit(const Surface& s, const std::vector<double>& eps_list,
                            const FitSpec& spec = {});

// Integral of (da2 - v3/2) theta ^ e1 over a closed surface.
EnergyReport exact_form_check(const Surface& s, const QuadratureSpec& q);

// |d_P u|^2 - u Lap_P u / 2 - R u^2 / 8 for the truncated u (h = 0) on the
// cylinder r = R about the t axis, at collar parameter rho = R - r.  Exact
// derivatives, or central differences along the frame flows with step h.
double cylinder_pde_residual(const Cylinder& cyl, double rho);
double cylinder_pde_residual_fd(const Cylinder& cyl, double rho, double h = 1e-4);

struct CoefficientRow {
  Param params;
  ExpansionCoeffs coeffs;
  VolumeDensities dens;
};
std::vector<CoefficientRow> coefficient_table(const Surface& s, int n1, int n2,
                                              double cutoff = 0.0);

}  // namespace crlab
