#include "oracles.hpp"

#include <array>
#include <cmath>
#include <map>

namespace oracle {

using zermelo::Expression;

namespace {

using State = std::array<double, 4>;

template <class F>
Path rk4(F rhs, State s, double t_end, double dt, const zermelo::Rect& domain) {
  Path path;
  const int n = static_cast<int>(std::llround(t_end / dt));
  auto record = [&](double t, const State& z) {
    path.time.push_back(t);
    path.p.emplace_back(z[0], z[1]);
    path.v.emplace_back(z[2], z[3]);
  };
  record(0.0, s);
  auto axpy = [](const State& a, double h, const State& k) {
    State r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] + h * k[i];
    return r;
  };
  for (int k = 0; k < n; ++k) {
    const State k1 = rhs(s);
    const State k2 = rhs(axpy(s, 0.5 * dt, k1));
    const State k3 = rhs(axpy(s, 0.5 * dt, k2));
    const State k4 = rhs(axpy(s, dt, k3));
    for (int i = 0; i < 4; ++i) s[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    if (!domain.contains(Point2(s[0], s[1]))) break;
    record((k + 1) * dt, s);
  }
  return path;
}

// d/dx and d/dy of a scalar field by the five-point stencil.
Eigen::Vector2d gradient(const Expression& f, const Point2& p, double h = 1e-3) {
  auto d = [&](const Point2& e) {
    return (-f(p + 2 * h * e) + 8 * f(p + h * e) - 8 * f(p - h * e) + f(p - 2 * h * e)) / (12 * h);
  };
  return {d(Point2(1, 0)), d(Point2(0, 1))};
}

}  // namespace

NavigationData quartic(double y_max, const char* speed) {
  NavigationData d;
  const std::map<std::string, double> c{{"a", 0.8}, {"b", 1.0}};
  d.wind.w1 = Expression::parse("a*(b - y^2)^2", c);
  d.speed = Expression::parse(speed);
  d.domain = {-20.0, 20.0, -y_max, y_max};
  return d;
}

NavigationData conformal(const char* speed, double y_max) {
  NavigationData d;
  d.speed = Expression::parse(speed);
  d.domain = {-20.0, 20.0, -y_max, y_max};
  return d;
}

NavigationData uniform(double w1, double w2, double speed, double half_width) {
  NavigationData d;
  d.wind.w1 = Expression::constant(w1);
  d.wind.w2 = Expression::constant(w2);
  d.speed = Expression::constant(speed);
  d.domain = {-half_width, half_width, -half_width, half_width};
  return d;
}

double randers(const NavigationData& data, const Point2& p, const Tangent2& y) {
  const double h11 = data.h.h11(p), h12 = data.h.h12(p), h22 = data.h.h22(p);
  const double W1 = data.wind.w1(p), W2 = data.wind.w2(p);
  const double s = data.speed(p);
  const double hWy = h11 * W1 * y.x() + h12 * (W1 * y.y() + W2 * y.x()) + h22 * W2 * y.y();
  const double WW = h11 * W1 * W1 + 2 * h12 * W1 * W2 + h22 * W2 * W2;
  const double yy = h11 * y.x() * y.x() + 2 * h12 * y.x() * y.y() + h22 * y.y() * y.y();
  const double lambda = s * s - WW;
  return (std::sqrt(hWy * hWy + yy * lambda) - hWy) / lambda;
}

double classical_randers(const Eigen::Vector2d& W, const Tangent2& y) {
  const double wy = W.dot(y);
  const double lam = 1.0 - W.squaredNorm();
  return std::sqrt(wy * wy + y.squaredNorm() * lam) / lam - wy / lam;
}

zermelo::SecondOrderJet fd_jet(const NavigationData& data, const Point2& p, const Tangent2& t, double h) {
  auto L = [&](const std::array<double, 4>& z) {
    const double F = randers(data, Point2(z[0], z[1]), Tangent2(z[2], z[3]));
    return 0.5 * F * F;
  };
  const std::array<double, 4> z0{p.x(), p.y(), t.x(), t.y()};
  auto shifted = [&](int i, double di, int j = -1, double dj = 0.0) {
    std::array<double, 4> z = z0;
    z[i] += di;
    if (j >= 0) z[j] += dj;
    return z;
  };
  auto d1 = [&](int i) {
    return (-L(shifted(i, 2 * h)) + 8 * L(shifted(i, h)) - 8 * L(shifted(i, -h)) + L(shifted(i, -2 * h))) / (12 * h);
  };
  auto d2 = [&](int i) {
    return (-L(shifted(i, 2 * h)) + 16 * L(shifted(i, h)) - 30 * L(z0) + 16 * L(shifted(i, -h)) -
            L(shifted(i, -2 * h))) /
           (12 * h * h);
  };
  static constexpr std::array<double, 4> off{2, 1, -1, -2};
  static constexpr std::array<double, 4> wgt{-1, 8, -8, 1};
  auto d11 = [&](int i, int j) {
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) s += wgt[a] * wgt[b] * L(shifted(i, off[a] * h, j, off[b] * h));
    return s / (144 * h * h);
  };
  zermelo::SecondOrderJet j;
  j.L = L(z0);
  j.L_x = d1(0);
  j.L_y = d1(1);
  j.L_u = d1(2);
  j.L_v = d1(3);
  j.L_uu = d2(2);
  j.L_vv = d2(3);
  j.L_uv = d11(2, 3);
  j.L_xu = d11(0, 2);
  j.L_xv = d11(0, 3);
  j.L_yu = d11(1, 2);
  j.L_yv = d11(1, 3);
  return j;
}

Path conformal_geodesic(const Point2& p0, double phi0, double t_end, double dt) {
  auto rhs = [](const State& z) {
    const double ty = std::tan(z[1]);
    return State{z[2], z[3], -2.0 * ty * z[2] * z[3], ty * (z[2] * z[2] - z[3] * z[3])};
  };
  const double c = std::cos(p0.y());
  const zermelo::Rect all{-1e9, 1e9, -1.5, 1.5};
  return rk4(rhs, State{p0.x(), p0.y(), c * std::cos(phi0), c * std::sin(phi0)}, t_end, dt, all);
}

Path pontryagin(const NavigationData& data, const Point2& p0, double phi0, double t_end, double dt) {
  // State (x, y, p1, p2); velocity recorded separately from the control law.
  auto velocity = [&](const State& z) {
    const Point2 x(z[0], z[1]);
    const Eigen::Vector2d p(z[2], z[3]);
    const Eigen::Vector2d W(data.wind.w1(x), data.wind.w2(x));
    return Eigen::Vector2d(W + data.speed(x) * p / p.norm());
  };
  auto rhs = [&](const State& z) {
    const Point2 x(z[0], z[1]);
    const Eigen::Vector2d p(z[2], z[3]);
    const Eigen::Vector2d v = velocity(z);
    const Eigen::Vector2d g1 = gradient(data.wind.w1, x);
    const Eigen::Vector2d g2 = gradient(data.wind.w2, x);
    const Eigen::Vector2d gU = gradient(data.speed, x);
    const Eigen::Vector2d pdot = -(p.x() * g1 + p.y() * g2) - p.norm() * gU;
    return State{v.x(), v.y(), pdot.x(), pdot.y()};
  };
  Path path = rk4(rhs, State{p0.x(), p0.y(), std::cos(phi0), std::sin(phi0)}, t_end, dt, data.domain);
  // rk4 stored the costate in v; replace it with the actual velocity.
  for (std::size_t k = 0; k < path.p.size(); ++k) {
    const State z{path.p[k].x(), path.p[k].y(), path.v[k].x(), path.v[k].y()};
    path.v[k] = velocity(z);
  }
  return path;
}

double bisect(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a);
  if ((fa < 0.0) == (f(b) < 0.0)) return std::nan("");
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace oracle
