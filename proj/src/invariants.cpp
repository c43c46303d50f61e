#include "crlab/invariants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "crlab/errors.hpp"

namespace crlab {
namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_depth(const InvariantJet& j, int d, const char* what) {
  if (j.depth < d)
    throw std::logic_error(std::string(what) + " needs a jet of depth " + std::to_string(d));
}

void require_torsion_free(const InvariantJet& j, const char* what) {
  if (!j.torsion_free)
    throw std::domain_error(std::string(what) + " is only available for torsion-free ambients");
}

void check_depth(int depth) {
  if (depth < 1 || depth > 3) throw std::invalid_argument("jet depth must be 1, 2 or 3");
}

InvariantJet compute(const Surface& s, const FrameFields& F, const Vec3& P, int depth,
                     double tol_hcr) {
  auto D1 = [&](const Jet& f) { return deriv(F.e1, f); };
  auto DV = [&](const Jet& f) { return deriv(F.V, f); };

  InvariantJet j;
  j.depth = depth;
  j.point = P;
  j.torsion_free = s.ambient().kind() != AmbientKind::Rescaled;
  const Jet& a = F.alpha;
  const Jet& H = F.H;
  const Jet& W = F.W;
  j.alpha = a.value();
  j.H = H.value();
  j.W = W.value();
  j.Im_A11 = F.a2.value();
  j.Re_A11bar = F.a1.value();

  const Jet e1a = D1(a);
  const Jet Va = DV(a);
  j.e1_alpha = e1a.value();
  j.V_alpha = Va.value();
  const Jet h10 = e1a + 0.5 * a * a - F.a2 + 0.25 * W;
  const Jet hc = h10 + H * H / 6.0;
  j.hcr = hc.value();
  const bool nonzero = std::abs(j.hcr) > tol_hcr;

  j.frak_f = j.e1_sqrt_hcr_frak_f = j.e1_hcr_frak_f = kNaN;
  j.e1_H = j.V_H = j.e1e1_alpha = j.e1_Hcr = j.V_Hcr = kNaN;
  j.h111 = j.h110 = j.h100 = kNaN;
  j.e1e1_H = j.e1V_H = j.e1e1_Hcr = kNaN;
  if (depth < 2) return j;

  const Jet e1H = D1(H);
  const Jet VH = DV(H);
  j.e1_H = e1H.value();
  j.V_H = VH.value();
  j.e1e1_alpha = D1(e1a).value();
  const Jet e1hc = D1(hc);
  j.e1_Hcr = e1hc.value();
  j.V_Hcr = DV(hc).value();

  // torsion-free h-derivatives
  const Jet h111 = e1H - 2.0 * a * H;
  const Jet h110 = VH - 3.0 * a * e1a - 3.0 * a * a * a - 1.5 * a * W;
  const Jet g = e1a + 0.5 * a * a;
  const Jet Vg = DV(g);
  const Jet h100 = Vg + a * H * e1a + a * a * a * H + 0.5 * a * H * W;
  j.h111 = h111.value();
  j.h110 = h110.value();
  j.h100 = h100.value();
  const Jet num = h10 * h111 + H * H * h111 / 3.0 + H * h110 + 1.5 * h100;
  // The same numerator with every h-derivative expanded.
  const Jet num_expanded = e1H * (g + H * H / 3.0 + 0.25 * W) + H * VH + 1.5 * Vg -
                           3.5 * a * H * e1a - 2.5 * a * a * a * H -
                           (2.0 / 3.0) * a * H * H * H - 1.25 * a * H * W;
  if (nonzero) j.frak_f = num.value() / std::abs(j.hcr);
  if (depth < 3) return j;

  j.e1e1_H = D1(e1H).value();
  j.e1V_H = D1(VH).value();
  j.e1e1_Hcr = D1(e1hc).value();
  if (nonzero) {
    j.e1_sqrt_hcr_frak_f = D1(num / sqrt(abs(hc))).value();
    j.e1_hcr_frak_f = D1(num_expanded).value();
  }
  return j;
}

}  // namespace

InvariantJet jet_at(const Surface& s, const Param& uv, int depth, double tol_hcr) {
  check_depth(depth);
  const Vec3 P = s.point(uv);
  const FrameFields F = frame_fields(s, P, depth);
  const Pushforward pf = pushforward(s, uv, F);
  if (pf.condition > 1e8)
    throw DegenerateChartError("chart differential condition " + std::to_string(pf.condition));
  InvariantJet j = compute(s, F, P, depth, tol_hcr);
  j.params = uv;
  j.area_density = area_form(s, uv, F);
  return j;
}

InvariantJet jet_at_point(const Surface& s, const Vec3& p, int depth, double tol_hcr) {
  check_depth(depth);
  InvariantJet j = compute(s, frame_fields(s, p, depth), p, depth, tol_hcr);
  j.area_density = kNaN;
  return j;
}

double hcr(const InvariantJet& j) { return j.hcr; }

double da1_density(const InvariantJet& j) { return std::pow(std::abs(j.hcr), 1.5); }

double da2_density(const InvariantJet& j) {
  const HCoefficients h = h_coefficients(j);
  return h.h00 + (2.0 / 3.0) * h.h10 * h.h11 + (2.0 / 27.0) * h.h11 * h.h11 * h.h11;
}

HCoefficients h_coefficients(const InvariantJet& j) {
  return {j.H,
          j.e1_alpha + 0.5 * j.alpha * j.alpha - j.Im_A11 + 0.25 * j.W,
          j.V_alpha + j.E1_im - j.alpha * j.Re_A11bar};
}

HDerivatives h_derivatives(const InvariantJet& j) {
  require_depth(j, 2, "h_derivatives");
  require_torsion_free(j, "h_derivatives");
  return {j.h111, j.h110, j.h100};
}

double frak_f(const InvariantJet& j, double tol_hcr) {
  require_depth(j, 2, "frak_f");
  require_torsion_free(j, "frak_f");
  if (!(std::abs(j.hcr) > tol_hcr)) throw HcrZeroError("Hcr vanishes; frak_f undefined");
  return j.frak_f;
}

double ode_residual(const InvariantJet& j) {
  require_depth(j, 2, "ode_residual");
  const double a = j.alpha;
  return j.e1e1_alpha + 6.0 * a * j.e1_alpha - j.V_H + a * j.H * j.H + 4.0 * a * a * a +
         2.0 * j.W * a;
}

double el_residual_e1(const InvariantJet& j, double tol_hcr) {
  require_depth(j, 3, "el_residual_e1");
  const double f = frak_f(j, tol_hcr);
  const double ah = std::abs(j.hcr), sh = std::sqrt(ah);
  const double sgn = j.hcr > 0 ? 1.0 : -1.0;
  const HCoefficients h = h_coefficients(j);
  return 0.5 * j.e1_sqrt_hcr_frak_f + 1.5 * sh * j.alpha * f +
         0.5 * sgn * sh *
             (9.0 * h.h00 + 6.0 * h.h11 * h.h10 + (2.0 / 3.0) * h.h11 * h.h11 * h.h11);
}

double el_residual_e1_alt(const InvariantJet& j, double tol_hcr) {
  require_depth(j, 3, "el_residual_e1_alt");
  const double f = frak_f(j, tol_hcr);
  const double hc = j.hcr, ah = std::abs(hc);
  const double sgn = hc > 0 ? 1.0 : -1.0;
  const double H = j.H;
  const double inner = -0.25 * sgn * f * j.e1_Hcr + 0.5 * j.e1_hcr_frak_f +
                       1.5 * ah * f * j.alpha +
                       hc * (4.5 * j.V_alpha + 3.0 * H * hc - H * H * H / 6.0);
  return inner / std::sqrt(ah);
}

double el_residual_e2(const InvariantJet& j) {
  require_depth(j, 3, "el_residual_e2");
  require_torsion_free(j, "el_residual_e2");
  const double a = j.alpha, H = j.H, W = j.W, ea = j.e1_alpha, eH = j.e1_H;
  const double a2 = a * a, H2 = H * H;
  const double s = H * j.e1e1_H + 3.0 * j.e1V_H + eH * eH + H2 * H2 / 3.0 + 3.0 * ea * ea +
                   12.0 * a2 * ea + 12.0 * a2 * a2 - a * H * eH + 2.0 * H2 * ea +
                   5.0 * a2 * H2 + 1.5 * W * (ea + (2.0 / 3.0) * H2 + 5.0 * a2 + 0.5 * W);
  return (4.0 / 9.0) * s;
}

ELResiduals el_residuals(const InvariantJet& j, double tol_hcr) {
  ELResiduals r;
  r.hcr = j.hcr;
  r.epsilon2 = el_residual_e2(j);
  r.epsilon1_defined = std::abs(j.hcr) > tol_hcr;
  if (r.epsilon1_defined) {
    r.epsilon1 = el_residual_e1(j, tol_hcr);
    r.epsilon1_alt = el_residual_e1_alt(j, tol_hcr);
  } else {
    r.epsilon1 = r.epsilon1_alt = kNaN;
  }
  return r;
}

}  // namespace crlab
