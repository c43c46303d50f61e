#include "crlab/jet.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace crlab {
namespace {

struct Tables {
  std::array<std::array<int, 3>, kNumCoeffs> exps{};
  std::array<int, kNumCoeffs> deg{};
  int index[kMaxOrder + 1][kMaxOrder + 1][kMaxOrder + 1];
  std::array<int, kMaxOrder + 2> count{};  // coefficients of order < n
  struct Prod { std::uint8_t a, b, r; };
  std::vector<Prod> prods;                 // sorted by output degree
  std::array<int, kMaxOrder + 1> prod_end{};
  // d/dx_axis: coefficient r of the result comes from src with factor
  std::array<std::array<int, kNumCoeffs>, 3> dsrc{};
  std::array<std::array<double, kNumCoeffs>, 3> dfac{};

  Tables() {
    for (auto& a : index)
      for (auto& b : a)
        for (int& c : b) c = -1;
    int n = 0;
    for (int d = 0; d <= kMaxOrder; ++d) {
      count[d] = n;
      for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) {
          int k = d - i - j;
          exps[n] = {i, j, k};
          deg[n] = d;
          index[i][j][k] = n++;
        }
    }
    count[kMaxOrder + 1] = n;
    for (int d = 0; d <= kMaxOrder; ++d) {
      for (int a = 0; a < kNumCoeffs; ++a)
        for (int b = 0; b < kNumCoeffs; ++b) {
          if (deg[a] + deg[b] != d) continue;
          const auto& ea = exps[a];
          const auto& eb = exps[b];
          int r = index[ea[0] + eb[0]][ea[1] + eb[1]][ea[2] + eb[2]];
          prods.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                           static_cast<std::uint8_t>(r)});
        }
      prod_end[d] = static_cast<int>(prods.size());
    }
    for (int ax = 0; ax < 3; ++ax)
      for (int r = 0; r < kNumCoeffs; ++r) {
        auto e = exps[r];
        if (deg[r] >= kMaxOrder) {
          dsrc[ax][r] = -1;
          continue;
        }
        e[ax] += 1;
        dsrc[ax][r] = index[e[0]][e[1]][e[2]];
        dfac[ax][r] = e[ax];
      }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

int ncoef(int order) { return tables().count[order + 1]; }

}  // namespace

Jet Jet::variable(int axis, double at, int order) {
  Jet j;
  j.order_ = order;
  j.c_[0] = at;
  if (order >= 1) j.c_[1 + axis] = 1.0;
  return j;
}

double Jet::coeff(int i, int j, int k) const {
  if (i < 0 || j < 0 || k < 0 || i + j + k > order_) return 0.0;
  return c_[tables().index[i][j][k]];
}

double Jet::partial(int i, int j, int k) const {
  if (i + j + k > order_) throw std::logic_error("Jet::partial beyond order");
  static constexpr double fact[] = {1, 1, 2, 6, 24};
  return coeff(i, j, k) * fact[i] * fact[j] * fact[k];
}

Jet Jet::d(int axis) const {
  if (order_ < 1) throw std::logic_error("Jet::d on an order-0 jet");
  const auto& t = tables();
  Jet r;
  r.order_ = order_ - 1;
  const int n = ncoef(r.order_);
  for (int i = 0; i < n; ++i) r.c_[i] = t.dfac[axis][i] * c_[t.dsrc[axis][i]];
  return r;
}

Jet Jet::truncated(int order) const {
  Jet r = *this;
  if (order >= order_) return r;
  r.order_ = order;
  for (int i = ncoef(order); i < kNumCoeffs; ++i) r.c_[i] = 0.0;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  const int n = ncoef(order_);
  for (int i = 0; i < n; ++i) c_[i] += o.c_[i];
  for (int i = n; i < kNumCoeffs; ++i) c_[i] = 0.0;
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  const int n = ncoef(order_);
  for (int i = 0; i < n; ++i) c_[i] -= o.c_[i];
  for (int i = n; i < kNumCoeffs; ++i) c_[i] = 0.0;
  return *this;
}

Jet& Jet::operator*=(double v) {
  const int n = ncoef(order_);
  for (int i = 0; i < n; ++i) c_[i] *= v;
  return *this;
}

Jet Jet::operator-() const {
  Jet r = *this;
  r *= -1.0;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  const auto& t = tables();
  Jet r;
  r.order_ = std::min(a.order_, b.order_);
  r.c_[0] = 0.0;
  const int end = t.prod_end[r.order_];
  for (int i = 0; i < end; ++i) {
    const auto& p = t.prods[i];
    r.c_[p.r] += a.c_[p.a] * b.c_[p.b];
  }
  return r;
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this / o; }
Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }

Jet compose(const Jet& a, const std::array<double, kMaxOrder + 1>& derivs) {
  static constexpr double inv_fact[] = {1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0};
  Jet delta = a;
  delta.c_[0] = 0.0;
  Jet r;
  r.order_ = a.order_;
  r.c_[0] = derivs[0];
  Jet pw = delta;
  for (int k = 1; k <= a.order_; ++k) {
    const double s = derivs[k] * inv_fact[k];
    const int n = ncoef(a.order_);
    for (int i = 0; i < n; ++i) r.c_[i] += s * pw.c_[i];
    if (k < a.order_) pw = pw * delta;
  }
  return r;
}

Jet operator/(double a, const Jet& b) {
  const double x = b.value();
  if (x == 0.0) throw std::domain_error("Jet division by zero");
  const double i = 1.0 / x;
  return compose(b, {a * i, -a * i * i, 2 * a * i * i * i, -6 * a * i * i * i * i,
                     24 * a * i * i * i * i * i});
}

Jet operator/(const Jet& a, const Jet& b) { return a * (1.0 / b); }

Jet pow(const Jet& a, double p) {
  const double x = a.value();
  std::array<double, kMaxOrder + 1> d{};
  double coef = 1.0;
  for (int k = 0; k <= kMaxOrder; ++k) {
    d[k] = coef * std::pow(x, p - k);
    coef *= (p - k);
  }
  return compose(a, d);
}

Jet sqrt(const Jet& a) {
  if (a.value() <= 0.0) throw std::domain_error("Jet sqrt of a non-positive value");
  return pow(a, 0.5);
}

Jet cbrt(const Jet& a) {
  const double x = a.value();
  const double s = x < 0 ? -1.0 : 1.0;
  return s * pow(s * a, 1.0 / 3.0);
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  return compose(a, {e, e, e, e, e});
}

Jet log(const Jet& a) {
  const double x = a.value();
  const double i = 1.0 / x;
  return compose(a, {std::log(x), i, -i * i, 2 * i * i * i, -6 * i * i * i * i});
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return compose(a, {s, c, -s, -c, s});
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return compose(a, {c, -s, -c, s, c});
}

Jet atan2(const Jet& y, const Jet& x) {
  const double x0 = x.value(), y0 = y.value();
  if (x0 == 0.0 && y0 == 0.0) throw std::domain_error("Jet atan2 at the origin");
  // angle offset relative to (x0, y0): its tangent vanishes at the base point
  const Jet w = (x0 * y - y0 * x) / (x0 * x + y0 * y);
  return compose(w, {std::atan2(y0, x0), 1.0, 0.0, -2.0, 0.0});
}

Jet abs(const Jet& a) { return a.value() < 0 ? -a : a; }
Jet square(const Jet& a) { return a * a; }

Jet deriv(const JetVec& X, const Jet& f) {
  return X[0] * f.d(0) + X[1] * f.d(1) + X[2] * f.d(2);
}

JetVec bracket(const JetVec& X, const JetVec& Y) {
  return {deriv(X, Y[0]) - deriv(Y, X[0]), deriv(X, Y[1]) - deriv(Y, X[1]),
          deriv(X, Y[2]) - deriv(Y, X[2])};
}

JetVec operator+(const JetVec& a, const JetVec& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
JetVec operator-(const JetVec& a, const JetVec& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
JetVec operator*(const Jet& s, const JetVec& a) { return {s * a[0], s * a[1], s * a[2]}; }

JetVec seed(const std::array<double, 3>& p, int order) {
  return {Jet::variable(0, p[0], order), Jet::variable(1, p[1], order),
          Jet::variable(2, p[2], order)};
}

}  // namespace crlab
