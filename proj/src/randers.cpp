#include "zermelo/randers.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace zermelo {

double resultant_speed(const NavigationData& data, const Point2& p, double theta) {
  const auto s = data.sample(p);
  const double w2 = s.wind.dot(s.h * s.wind);
  const double u2 = s.speed * s.speed;
  if (!(s.speed > 0.0) || !(w2 < u2)) throw ConvexityError("mild-wind condition |W|_h < |u|_h violated");
  const double wc = std::sqrt(w2) * std::cos(theta);
  return wc + std::sqrt(wc * wc + u2 - w2);
}

double evaluate_F(const RandersMetric& metric, const Point2& p, const Tangent2& t) {
  const auto s = metric.data().sample(p);
  return randers_norm<double>(s.h, s.wind, s.speed, t);
}

RandersDecomposition decompose(const RandersMetric& metric, const Point2& p) {
  const auto s = metric.data().sample(p);
  if (!(s.speed > 0.0)) throw ConvexityError("ship speed must be positive");
  const Eigen::Vector2d wind_flat = s.h * s.wind;
  const double lambda = s.speed * s.speed - s.wind.dot(wind_flat);
  if (!(lambda > 0.0)) throw ConvexityError("mild-wind condition |W|_h < |u|_h violated");
  RandersDecomposition d;
  d.lambda_tilde = lambda;
  d.a_tilde = s.h / lambda + wind_flat * wind_flat.transpose() / (lambda * lambda);
  d.b_tilde = -wind_flat / lambda;
  return d;
}

EffectiveWind effective_wind(const RandersMetric& metric, const Point2& p) {
  const auto s = metric.data().sample(p);
  if (!(s.speed > 0.0)) throw DomainError("ship speed must be positive to rescale the wind");
  EffectiveWind e;
  e.w = s.wind / s.speed;
  e.h_norm = std::sqrt(std::max(0.0, e.w.dot(s.h * e.w)));
  return e;
}

Taylor2<4> lagrangian(const RandersMetric& metric, const Point2& p, const Tangent2& t) {
  using T2 = Taylor2<2>;
  using T4 = Taylor2<4>;
  if (t.x() == 0.0 && t.y() == 0.0)
    throw DegenerateVectorError("L = F^2/2 is not twice differentiable at the zero vector");
  const auto s = metric.data().sample(T2::variable(p.x(), 0), T2::variable(p.y(), 1));
  Mat2<T4> h;
  h << embed<4>(s.h(0, 0)), embed<4>(s.h(0, 1)), embed<4>(s.h(1, 0)), embed<4>(s.h(1, 1));
  const Vec2<T4> wind(embed<4>(s.wind.x()), embed<4>(s.wind.y()));
  const T4 speed = embed<4>(s.speed);
  const Vec2<T4> y(T4::variable(t.x(), 2), T4::variable(t.y(), 3));
  const T4 F = randers_norm<T4>(h, wind, speed, y);
  return T4(0.5) * F * F;
}

SecondOrderJet jet(const RandersMetric& metric, const Point2& p, const Tangent2& t) {
  const Taylor2<4> L = lagrangian(metric, p, t);
  SecondOrderJet j;
  j.L = L.v;
  j.L_x = L.g[0];
  j.L_y = L.g[1];
  j.L_u = L.g[2];
  j.L_v = L.g[3];
  j.L_uu = L.H(2, 2);
  j.L_uv = L.H(2, 3);
  j.L_vv = L.H(3, 3);
  j.L_xu = L.H(0, 2);
  j.L_xv = L.H(0, 3);
  j.L_yu = L.H(1, 2);
  j.L_yv = L.H(1, 3);
  return j;
}

NavigationReconstruction reconstruct_navigation(const RandersDecomposition& decomp, double speed) {
  if (!(speed > 0.0) || speed > 1.0) throw ReconstructionError("speed must lie in (0, 1]");
  Eigen::LLT<Eigen::Matrix2d> a_llt(decomp.a_tilde);
  if (a_llt.info() != Eigen::Success) throw ReconstructionError("a~ is not positive definite");
  const double b2 = decomp.b_tilde.dot(a_llt.solve(decomp.b_tilde));
  const double lambda = speed * speed * (1.0 - b2);
  if (!(lambda > 0.0)) throw ReconstructionError("||b~||_a~ >= 1: no positive lambda~");

  NavigationReconstruction r;
  r.lambda_tilde = lambda;
  const Eigen::Vector2d wind_flat = -lambda * decomp.b_tilde;
  r.h = lambda * decomp.a_tilde - wind_flat * wind_flat.transpose() / lambda;
  Eigen::LLT<Eigen::Matrix2d> h_llt(r.h);
  if (h_llt.info() != Eigen::Success) throw ReconstructionError("recovered h is not positive definite");
  r.wind = h_llt.solve(wind_flat);
  return r;
}

}  // namespace zermelo
