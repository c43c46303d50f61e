#pragma once
// Surface families in the model ambients.  Every surface is the zero set
// of a closed-form defining function U with a compatible chart; the
// adapted frame takes e2 = grad_b U / |grad_b U| and e1 = -J e2.

#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "crlab/ambient.hpp"

namespace crlab {

using Param = std::array<double, 2>;

inline constexpr double kTolSing = 1e-8;

struct ParamDomain {
  std::array<double, 2> lo{}, hi{};
  std::array<bool, 2> periodic{};
  // Parameter values of singular chart ends beyond lo / hi, NaN for regular
  // ends.  Quadrature grades its nodes toward them.
  std::array<double, 2> singular_lo{NAN, NAN}, singular_hi{NAN, NAN};
};

struct SingularSet {
  enum class Kind { Empty, Points, Curves, Unknown };
  Kind kind = Kind::Empty;
  std::vector<Param> points;  // parameter locations (Points)
  std::string description;
};

struct SurfacePoint {
  Param params;
  Vec3 ambient;
};

class Surface {
 public:
  explicit Surface(std::shared_ptr<const Ambient> ambient) : ambient_(std::move(ambient)) {}
  virtual ~Surface() = default;

  virtual std::string family() const = 0;
  // Defining function; the surface is {U = 0} and e2 points toward U > 0.
  virtual Jet defining(const JetVec& X) const = 0;
  // Chart evaluated on jets of the two parameters (axes 0 and 1).
  virtual JetVec chart(const Jet& u, const Jet& v) const = 0;
  // Integration domain with a parameter neighbourhood of radius `cutoff`
  // removed around the singular set.
  virtual ParamDomain domain(double cutoff = 0.0) const = 0;
  virtual SingularSet singular_set() const = 0;
  // Closed surfaces: every chart direction periodic, no singular points.
  bool closed() const;

  const Ambient& ambient() const { return *ambient_; }
  std::shared_ptr<const Ambient> ambient_ptr() const { return ambient_; }
  Vec3 point(const Param& uv) const;
  SurfacePoint surface_point(const Param& uv) const { return {uv, point(uv)}; }

 protected:
  std::shared_ptr<const Ambient> ambient_;
};

using SurfacePtr = std::shared_ptr<const Surface>;

// Jets, around one surface point, of the adapted frame extended to nearby
// level sets of U.  The frame and alpha carry `order` derivatives, H one
// fewer; order 3 is the most the jet capacity allows over the models.
struct FrameFields {
  FrameJet amb;
  Jet U, grad_norm;
  Jet p, q;            // e1 = p E1 + q E2, e2 = -q E1 + p E2
  JetVec e1, e2, V;    // V = T + alpha e2
  Jet alpha, H;
  Jet W, a1, a2;       // torsion relative to (e1, e2)
};
FrameFields frame_fields(const Surface& s, const Vec3& at, int order = 3,
                         double tol_sing = kTolSing);

struct AdaptedFrameData {
  Vec3 e1, e2, T;
  double alpha = 0.0, H = 0.0;
  double area_density = 0.0;
};
AdaptedFrameData adapted_frame(const Surface& s, const Param& uv, double tol_sing = kTolSing);

// theta ^ e1 against du dv.
double area_form(const Surface& s, const Param& uv, double tol_sing = kTolSing);
// The same from a frame already built at s.point(uv).
double area_form(const Surface& s, const Param& uv, const FrameFields& F);

// e1 and V written in the chart basis (d/du, d/dv), with the condition
// number of the chart differential and the distance of V from T(Sigma).
struct Pushforward {
  double e1_u, e1_v, V_u, V_v;
  double condition;
  double tangency_residual;
};
Pushforward pushforward(const Surface& s, const Param& uv, double tol_sing = kTolSing);
Pushforward pushforward(const Surface& s, const Param& uv, const FrameFields& F);

SingularSet singular_set(const Surface& s);

// ---- families -------------------------------------------------------------

using ScalarFn = std::function<Jet(const Jet&)>;
using PlaneFn = std::function<Jet(const Jet&, const Jet&)>;

// t^2 = f(r^2) around the t axis, charted by (angle, sigma) through a
// profile curve sigma -> (r, t).  Profile ends with r = 0 are singular.
class RotationalHeis final : public Surface {
 public:
  struct Profile {
    std::function<std::array<Jet, 2>(const Jet&)> rt;
    double lo, hi;
    bool lo_singular, hi_singular;
  };
  RotationalHeis(std::string name, ScalarFn f, Profile profile);
  std::string family() const override { return name_; }
  Jet defining(const JetVec& X) const override;
  JetVec chart(const Jet& u, const Jet& v) const override;
  ParamDomain domain(double cutoff = 0.0) const override;
  SingularSet singular_set() const override;
  const ScalarFn& f() const { return f_; }

 private:
  std::string name_;
  ScalarFn f_;
  Profile profile_;
};

// (r^2 + lambda)^2 + 4t^2 = rho0^4, charted by (angle, psi) with
// r^2 + lambda = rho0^2 cos psi, t = rho0^2 sin psi / 2.
std::shared_ptr<RotationalHeis> make_shifted_sphere(double rho0, double lambda);
std::shared_ptr<RotationalHeis> make_heis_sphere(double rho0);
// t = c r^2 for r in [r_lo, r_hi].
std::shared_ptr<RotationalHeis> make_dilation_cone(double c, double r_lo = 0.5,
                                                   double r_hi = 2.0);

// r = R, charted by (angle, t) with t periodic of the given period.
class Cylinder final : public Surface {
 public:
  explicit Cylinder(double radius = 1.0, double period = 1.0);
  std::string family() const override { return "cylinder"; }
  Jet defining(const JetVec& X) const override;
  JetVec chart(const Jet& u, const Jet& v) const override;
  ParamDomain domain(double cutoff = 0.0) const override;
  SingularSet singular_set() const override { return {}; }
  double radius() const { return R_; }
  double period() const { return period_; }

 private:
  double R_, period_;
};

// r = R + g(angle, t): a normal graph over Cylinder(R, period).
class CylinderGraph final : public Surface {
 public:
  CylinderGraph(double radius, double period, PlaneFn g);
  std::string family() const override { return "cylinder_graph"; }
  Jet defining(const JetVec& X) const override;
  JetVec chart(const Jet& u, const Jet& v) const override;
  ParamDomain domain(double cutoff = 0.0) const override;
  SingularSet singular_set() const override;

 private:
  double R_, period_;
  PlaneFn g_;
};

// a x + b y = c, charted by arclength along the trace and t.
class VerticalPlane final : public Surface {
 public:
  VerticalPlane(double a, double b, double c, double half_width = 1.0);
  std::string family() const override { return "vertical_plane"; }
  Jet defining(const JetVec& X) const override;
  JetVec chart(const Jet& u, const Jet& v) const override;
  ParamDomain domain(double cutoff = 0.0) const override;
  SingularSet singular_set() const override { return {}; }

 private:
  double a_, b_, c_, half_;
};

using PlaneGrad = std::function<std::array<Jet, 2>(const Jet&, const Jet&)>;

// Graph t = u(x, y) over a rectangle; U = u - t.  The optional gradient
// (u_x, u_y) lets graph perturbations be built without losing jet order.
class GraphHeis : public Surface {
 public:
  GraphHeis(std::string name, PlaneFn u, ParamDomain dom, PlaneGrad grad = nullptr);
  std::string family() const override { return name_; }
  Jet defining(const JetVec& X) const override;
  JetVec chart(const Jet& u, const Jet& v) const override;
  ParamDomain domain(double cutoff = 0.0) const override;
  SingularSet singular_set() const override;
  Jet height(const Jet& x, const Jet& y) const { return u_(x, y); }
  const PlaneFn& height_fn() const { return u_; }
  const PlaneGrad& gradient() const { return grad_; }

 protected:
  std::string name_;
  PlaneFn u_;
  ParamDomain dom_;
  PlaneGrad grad_;
};

// Polynomial graph t = sum c_ij x^i y^j.
struct Monomial {
  int i, j;
  double c;
};
std::shared_ptr<GraphHeis> make_polynomial_graph(std::vector<Monomial> terms,
                                                 ParamDomain dom);

// t = -sign x y + c: foliated by the left-invariant lines.
class FoliatedGraph final : public GraphHeis {
 public:
  FoliatedGraph(int sign, double c, ParamDomain dom);
  SingularSet singular_set() const override;
  int sign() const { return sign_; }

 private:
  int sign_;
};

// rho1 = const in the sphere, charted by (phi1, phi2).
class TorusS3 final : public Surface {
 public:
  explicit TorusS3(double rho1);
  std::string family() const override { return "torus_s3"; }
  Jet defining(const JetVec& X) const override;
  JetVec chart(const Jet& u, const Jet& v) const override;
  ParamDomain domain(double cutoff = 0.0) const override;
  SingularSet singular_set() const override { return {}; }
  double rho1() const { return rho1_; }

 private:
  double rho1_;
};

// rho1 = base + g(phi1, phi2): a normal graph over a torus.
class TorusGraphS3 final : public Surface {
 public:
  TorusGraphS3(double base, PlaneFn g);
  std::string family() const override { return "torus_graph_s3"; }
  Jet defining(const JetVec& X) const override;
  JetVec chart(const Jet& u, const Jet& v) const override;
  ParamDomain domain(double cutoff = 0.0) const override;
  SingularSet singular_set() const override;

 private:
  double base_;
  PlaneFn g_;
};

// The same defining function and chart over a different contact form.
class RetargetedSurface final : public Surface {
 public:
  RetargetedSurface(SurfacePtr base, std::shared_ptr<const Ambient> ambient);
  std::string family() const override { return base_->family(); }
  Jet defining(const JetVec& X) const override { return base_->defining(X); }
  JetVec chart(const Jet& u, const Jet& v) const override { return base_->chart(u, v); }
  ParamDomain domain(double cutoff = 0.0) const override { return base_->domain(cutoff); }
  SingularSet singular_set() const override { return base_->singular_set(); }

 private:
  SurfacePtr base_;
};

}  // namespace crlab
