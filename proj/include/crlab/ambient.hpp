#pragma once
// Model pseudohermitian 3-manifolds: the Heisenberg group and the CR
// sphere in torus coordinates, plus conformal rescalings of either.

#include <array>
#include <functional>
#include <memory>
#include <string>

#include "crlab/jet.hpp"

namespace crlab {

using Vec3 = std::array<double, 3>;

enum class AmbientKind { Heisenberg, Sphere3, Rescaled };

// Frame and connection data as jets of the ambient coordinates.
//   E1, E2 = J E1: horizontal orthonormal frame; T: Reeb field.
//   om1, om2, omT: connection form evaluated on (E1, E2, T).
//   a1, a2: torsion components, tau(E1) = a1 E1 - a2 E2.
struct FrameJet {
  JetVec E1, E2, T;
  std::array<Jet, 3> theta;  // contact form in coordinate covector components
  Jet om1, om2, omT;
  Jet W, a1, a2;
};

class Ambient {
 public:
  virtual ~Ambient() = default;
  virtual AmbientKind kind() const = 0;
  virtual std::string name() const = 0;
  // Constant Webster curvature, NaN when it varies.
  virtual double webster_W() const = 0;
  virtual double torsion_a1() const { return 0.0; }
  virtual double torsion_a2() const { return 0.0; }
  // Throws ChartDomainError outside the coordinate chart.
  virtual void check_domain(const Vec3& p) const { (void)p; }
  virtual FrameJet frame(const JetVec& X) const = 0;

  FrameJet frame_at(const Vec3& p, int order = kMaxOrder) const;
};

class HeisenbergAmbient final : public Ambient {
 public:
  AmbientKind kind() const override { return AmbientKind::Heisenberg; }
  std::string name() const override { return "heisenberg"; }
  double webster_W() const override { return 0.0; }
  FrameJet frame(const JetVec& X) const override;
};

// Coordinates (phi1, phi2, rho1), rho2 = sqrt(1 - rho1^2), 0 < rho1 < 1.
class SphereAmbient final : public Ambient {
 public:
  AmbientKind kind() const override { return AmbientKind::Sphere3; }
  std::string name() const override { return "sphere3"; }
  double webster_W() const override { return 2.0; }
  void check_domain(const Vec3& p) const override;
  FrameJet frame(const JetVec& X) const override;
};

// theta~ = lambda^2 theta over a base model.  Connection, torsion and
// curvature are recomputed from Lie brackets of the rescaled frame.
class RescaledAmbient final : public Ambient {
 public:
  using Factor = std::function<Jet(const JetVec&)>;
  RescaledAmbient(std::shared_ptr<const Ambient> base, Factor lambda);
  AmbientKind kind() const override { return AmbientKind::Rescaled; }
  std::string name() const override { return "rescaled_" + base_->name(); }
  double webster_W() const override;
  double torsion_a1() const override;
  double torsion_a2() const override;
  void check_domain(const Vec3& p) const override { base_->check_domain(p); }
  FrameJet frame(const JetVec& X) const override;
  const Ambient& base() const { return *base_; }
  Jet lambda(const JetVec& X) const { return lambda_(X); }

 private:
  std::shared_ptr<const Ambient> base_;
  Factor lambda_;
};

std::shared_ptr<const Ambient> heisenberg();
std::shared_ptr<const Ambient> sphere3();

// Jet orders the frame of m consumes beyond those of its coordinates.
int frame_order_loss(const Ambient& m);

// Connection form, torsion and Webster curvature of an arbitrary frame
// (E1, E2 = J E1, T) recovered from brackets; fills the remaining fields.
void connection_from_brackets(FrameJet& f);

// Coordinates of v in the frame basis (E1, E2, T).
std::array<Jet, 3> frame_components(const FrameJet& f, const JetVec& v);

struct ContactData {
  std::array<double, 3> theta;  // covector components
  Vec3 e1, e2, T;               // the model frame
};
ContactData contact_data(const Ambient& m, const Vec3& p);

struct ConnectionCoeffs {
  double omega_e1, omega_e2, omega_T;
};
// Connection form of the frame obtained by rotating the model frame by the
// angle field beta (zero gives the model frame itself).
ConnectionCoeffs connection_form_coeffs(
    const Ambient& m, const Vec3& p,
    const std::function<Jet(const JetVec&)>& beta = nullptr);

// -2W from the structure equation, connection derivatives by central
// differences (step h, one Richardson refinement) on the closed-form data.
double webster_identity_fd(const Ambient& m, const Vec3& p, double h = 1e-5);

struct GeodesicState {
  Vec3 point;
  Vec3 velocity;
};
// Horizontal geodesic nabla_{g'} g' = 0 from p with unit horizontal v0,
// integrated to parameter rho by RK4 with step min(step, 1e-3 rho).
GeodesicState contact_geodesic_state(const Ambient& m, const Vec3& p, const Vec3& v0,
                                     double rho, double step = 1e-3);
Vec3 contact_geodesic(const Ambient& m, const Vec3& p, const Vec3& v0, double rho,
                      double step = 1e-3);

// Levi-metric norm of a vector (theta^2 + horizontal part).
double levi_norm(const Ambient& m, const Vec3& p, const Vec3& v);

}  // namespace crlab
