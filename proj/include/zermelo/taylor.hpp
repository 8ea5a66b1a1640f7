#pragma once

// Second-order truncated Taylor numbers for forward-mode differentiation.
//
// A Taylor2<N> carries a value, its gradient and its Hessian with respect to
// N seeded independent variables. Arithmetic propagates all three exactly
// (up to rounding), so any closed-form expression evaluated on Taylor2
// arguments yields exact first and second partial derivatives.

#include <cmath>
#include <limits>

#include <Eigen/Core>

namespace zermelo {

template <int N>
struct Taylor2 {
  using Gradient = Eigen::Matrix<double, N, 1>;
  using Hessian = Eigen::Matrix<double, N, N>;

  double v = 0.0;
  Gradient g = Gradient::Zero();
  Hessian H = Hessian::Zero();

  Taylor2() = default;
  // Implicit on purpose: constants mix freely with seeded variables.
  Taylor2(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Taylor2(double value, const Gradient& grad, const Hessian& hess) : v(value), g(grad), H(hess) {}

  static Taylor2 variable(double value, int index) {
    Taylor2 t(value);
    t.g[index] = 1.0;
    return t;
  }

  Taylor2& operator+=(const Taylor2& o) {
    v += o.v;
    g += o.g;
    H += o.H;
    return *this;
  }
  Taylor2& operator-=(const Taylor2& o) {
    v -= o.v;
    g -= o.g;
    H -= o.H;
    return *this;
  }
  Taylor2& operator*=(const Taylor2& o) {
    *this = *this * o;
    return *this;
  }
  Taylor2& operator/=(const Taylor2& o) {
    *this = *this / o;
    return *this;
  }

  friend Taylor2 operator+(Taylor2 a, const Taylor2& b) { return a += b; }
  friend Taylor2 operator-(Taylor2 a, const Taylor2& b) { return a -= b; }
  friend Taylor2 operator-(const Taylor2& a) { return Taylor2(-a.v, -a.g, -a.H); }
  friend Taylor2 operator+(const Taylor2& a) { return a; }

  friend Taylor2 operator*(const Taylor2& a, const Taylor2& b) {
    Taylor2 r;
    r.v = a.v * b.v;
    r.g = a.v * b.g + b.v * a.g;
    const Hessian cross = a.g * b.g.transpose();
    r.H = a.v * b.H + b.v * a.H + cross + cross.transpose();
    return r;
  }

  friend Taylor2 operator/(const Taylor2& a, const Taylor2& b) { return a * reciprocal(b); }

  // Chain rule for a scalar function f with f(a.v) = f0, f' = d1, f'' = d2.
  friend Taylor2 chain(const Taylor2& a, double f0, double d1, double d2) {
    return Taylor2(f0, d1 * a.g, d1 * a.H + d2 * (a.g * a.g.transpose()));
  }

  friend Taylor2 reciprocal(const Taylor2& a) {
    const double inv = 1.0 / a.v;
    return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
  }
  friend Taylor2 sqrt(const Taylor2& a) {
    const double s = std::sqrt(a.v);
    return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
  }
  friend Taylor2 sin(const Taylor2& a) {
    const double s = std::sin(a.v);
    const double c = std::cos(a.v);
    return chain(a, s, c, -s);
  }
  friend Taylor2 cos(const Taylor2& a) {
    const double s = std::sin(a.v);
    const double c = std::cos(a.v);
    return chain(a, c, -s, -c);
  }
  friend Taylor2 exp(const Taylor2& a) {
    const double e = std::exp(a.v);
    return chain(a, e, e, e);
  }
  friend Taylor2 pow(const Taylor2& a, double c) {
    if (c == 0.0) return Taylor2(1.0);
    if (c == 1.0) return a;
    const double d2 = (c == 2.0) ? 2.0 : c * (c - 1.0) * std::pow(a.v, c - 2.0);
    return chain(a, std::pow(a.v, c), c * std::pow(a.v, c - 1.0), d2);
  }
  friend Taylor2 abs(const Taylor2& a) { return a.v < 0.0 ? -a : a; }

  friend bool operator<(const Taylor2& a, const Taylor2& b) { return a.v < b.v; }
  friend bool operator>(const Taylor2& a, const Taylor2& b) { return a.v > b.v; }
  friend bool operator<=(const Taylor2& a, const Taylor2& b) { return a.v <= b.v; }
  friend bool operator>=(const Taylor2& a, const Taylor2& b) { return a.v >= b.v; }
  friend bool operator==(const Taylor2& a, const Taylor2& b) { return a.v == b.v; }
  friend bool operator!=(const Taylor2& a, const Taylor2& b) { return a.v != b.v; }

  friend bool isfinite(const Taylor2& a) {
    return std::isfinite(a.v) && a.g.allFinite() && a.H.allFinite();
  }
};

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Taylor2<N>& x) {
  return x.v;
}

// Lift a Taylor number in M variables into N >= M variables; the first M
// slots of the target carry the source derivatives.
template <int N, int M>
Taylor2<N> embed(const Taylor2<M>& a) {
  static_assert(N >= M);
  Taylor2<N> r(a.v);
  r.g.template head<M>() = a.g;
  r.H.template topLeftCorner<M, M>() = a.H;
  return r;
}

}  // namespace zermelo

namespace Eigen {

template <int N>
struct NumTraits<zermelo::Taylor2<N>> : GenericNumTraits<double> {
  using Real = zermelo::Taylor2<N>;
  using NonInteger = zermelo::Taylor2<N>;
  using Nested = zermelo::Taylor2<N>;
  using Literal = zermelo::Taylor2<N>;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1 + N + N * N,
    AddCost = 1 + N + N * N,
    MulCost = 3 * (1 + N + N * N)
  };

  static Real epsilon() { return Real(std::numeric_limits<double>::epsilon()); }
  static Real dummy_precision() { return Real(1e-12); }
  static Real highest() { return Real(std::numeric_limits<double>::max()); }
  static Real lowest() { return Real(std::numeric_limits<double>::lowest()); }
  static int digits10() { return std::numeric_limits<double>::digits10; }
};

}  // namespace Eigen
