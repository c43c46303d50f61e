#pragma once
// Truncated multivariate Taylor polynomials in three variables.
//
// A Jet stores every partial derivative (divided by the multi-index
// factorial) up to its order.  Arithmetic propagates them exactly, so a
// quantity built from a closed-form defining function carries its own
// derivatives and vector fields can be applied to it without finite
// differences.  Each derivative lowers the order by one.

#include <array>
#include <cmath>
#include <cstdint>

namespace crlab {

inline constexpr int kMaxOrder = 4;
inline constexpr int kNumCoeffs = 35;  // monomials of degree <= 4 in 3 vars

class Jet {
 public:
  Jet() = default;
  Jet(double v) { c_[0] = v; }  // NOLINT: constants convert implicitly

  // The coordinate function x_axis expanded at `at`.
  static Jet variable(int axis, double at, int order = kMaxOrder);

  double value() const { return c_[0]; }
  int order() const { return order_; }
  // Taylor coefficient of dx^i dy^j dz^k.
  double coeff(int i, int j, int k) const;
  // Partial derivative d^{i+j+k} / dx^i dy^j dz^k at the expansion point.
  double partial(int i, int j, int k) const;

  Jet d(int axis) const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(double v) { c_[0] += v; return *this; }
  Jet& operator-=(double v) { c_[0] -= v; return *this; }
  Jet& operator*=(double v);
  Jet& operator/=(double v) { return *this *= 1.0 / v; }
  Jet operator-() const;

  // f(a) from f^(k)(a.value()), k = 0..order.
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet compose(const Jet& a, const std::array<double, kMaxOrder + 1>& derivs);

  const std::array<double, kNumCoeffs>& raw() const { return c_; }

 private:
  std::array<double, kNumCoeffs> c_{};
  int order_ = kMaxOrder;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
inline Jet operator+(Jet a, double b) { return a += b; }
inline Jet operator+(double a, Jet b) { return b += a; }
inline Jet operator-(Jet a, double b) { return a -= b; }
inline Jet operator-(double a, const Jet& b) { return (-b) += a; }
inline Jet operator*(Jet a, double b) { return a *= b; }
inline Jet operator*(double a, Jet b) { return b *= a; }
inline Jet operator/(Jet a, double b) { return a /= b; }
Jet operator/(double a, const Jet& b);

Jet sqrt(const Jet& a);
Jet cbrt(const Jet& a);
Jet pow(const Jet& a, double p);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet atan2(const Jet& y, const Jet& x);
Jet abs(const Jet& a);
Jet square(const Jet& a);
inline double value_of(const Jet& a) { return a.value(); }
inline double value_of(double a) { return a; }

using JetVec = std::array<Jet, 3>;

// X(f) for a vector field with coordinate components X.
Jet deriv(const JetVec& X, const Jet& f);
// Coordinate components of [X, Y].
JetVec bracket(const JetVec& X, const JetVec& Y);
JetVec operator+(const JetVec& a, const JetVec& b);
JetVec operator-(const JetVec& a, const JetVec& b);
JetVec operator*(const Jet& s, const JetVec& a);

// The three coordinate functions expanded at p.
JetVec seed(const std::array<double, 3>& p, int order = kMaxOrder);

}  // namespace crlab
