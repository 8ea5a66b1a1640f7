#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta pair with the standard
// fourth-order continuous extension.

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Core>

namespace zermelo {

struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;
  double min_step = 1e-13;
  int max_steps = 200000;
};

namespace dopri {

inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                        a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                        a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;

// Fifth minus fourth order weights.
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

}  // namespace dopri

// Continuous extension over one accepted step [t0, t0 + h].
template <int N>
struct DenseSegment {
  using State = Eigen::Matrix<double, N, 1>;
  double t0 = 0.0;
  double h = 0.0;
  std::array<State, 5> r;

  State operator()(double t) const {
    const double s = (t - t0) / h;
    const double s1 = 1.0 - s;
    return r[0] + s * (r[1] + s1 * (r[2] + s * (r[3] + s1 * r[4])));
  }
};

template <int N>
struct DopriTrial {
  using State = Eigen::Matrix<double, N, 1>;
  State y1;
  State k7;  // f(t0 + h, y1), reused as k1 of the next step
  double error = 0.0;
  DenseSegment<N> dense;
};

// One trial step of size h from (t0, y0) with k1 = f(t0, y0). The RHS may
// throw; the exception propagates to the caller.
template <int N, class Rhs>
DopriTrial<N> dopri_step(const Rhs& f, double t0, const Eigen::Matrix<double, N, 1>& y0,
                         const Eigen::Matrix<double, N, 1>& k1, double h, const Tolerance& tol) {
  using namespace dopri;
  using State = Eigen::Matrix<double, N, 1>;
  const State k2 = f(t0 + c2 * h, State(y0 + h * a21 * k1));
  const State k3 = f(t0 + c3 * h, State(y0 + h * (a31 * k1 + a32 * k2)));
  const State k4 = f(t0 + c4 * h, State(y0 + h * (a41 * k1 + a42 * k2 + a43 * k3)));
  const State k5 = f(t0 + c5 * h, State(y0 + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
  const State k6 = f(t0 + h, State(y0 + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
  DopriTrial<N> out;
  out.y1 = y0 + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
  out.k7 = f(t0 + h, out.y1);

  const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * out.k7);
  double sum = 0.0;
  for (int i = 0; i < N; ++i) {
    const double sk = tol.abs + tol.rel * std::max(std::abs(y0[i]), std::abs(out.y1[i]));
    sum += (err[i] / sk) * (err[i] / sk);
  }
  out.error = std::sqrt(sum / N);

  DenseSegment<N>& d = out.dense;
  d.t0 = t0;
  d.h = h;
  d.r[0] = y0;
  d.r[1] = out.y1 - y0;
  d.r[2] = h * k1 - d.r[1];
  d.r[3] = d.r[1] - h * out.k7 - d.r[2];
  d.r[4] = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * out.k7);
  return out;
}

// Step-size factor from an error estimate (order 5 controller).
inline double dopri_factor(double error) {
  if (error == 0.0) return 10.0;
  return std::clamp(0.9 * std::pow(error, -0.2), 0.2, 10.0);
}

}  // namespace zermelo
