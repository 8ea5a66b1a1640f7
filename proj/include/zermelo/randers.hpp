#pragma once

// The generalized Randers metric F~ of a navigation problem with
// space-dependent ship speed:
//
//   F~(y) = ( sqrt( h(W,y)^2 + |y|_h^2 lambda ) - h(W,y) ) / lambda,
//   lambda = |u|_h^2 - |W|_h^2,
//
// its split F~ = alpha~ + beta~, the rescaled wind W/|u|_h, and exact
// second-order jets of L = F~^2 / 2.

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "zermelo/navigation.hpp"
#include "zermelo/taylor.hpp"
#include "zermelo/types.hpp"

namespace zermelo {

// Rounding slack below zero tolerated in the square-root argument.
inline constexpr double kSqrtClamp = 1e-14;

template <class T>
T randers_norm(const Mat2<T>& h, const Vec2<T>& wind, const T& speed, const Vec2<T>& y) {
  using std::sqrt;
  if (!(value_of(speed) > 0.0)) throw ConvexityError("ship speed must be positive");
  const Vec2<T> wind_flat = h * wind;
  const T lambda = speed * speed - wind.dot(wind_flat);
  if (!(value_of(lambda) > 0.0)) throw ConvexityError("mild-wind condition |W|_h < |u|_h violated");
  const T hwy = wind_flat.dot(y);
  T arg = hwy * hwy + y.dot(h * y) * lambda;
  if (value_of(arg) < 0.0) {
    if (value_of(arg) < -kSqrtClamp) throw ConvexityError("negative radicand in Randers norm");
    arg = T(0.0);
  }
  if (value_of(arg) == 0.0) return (T(0.0) - hwy) / lambda;
  return (sqrt(arg) - hwy) / lambda;
}

class RandersMetric {
 public:
  explicit RandersMetric(NavigationData data) : data_(std::move(data)) {}
  const NavigationData& data() const { return data_; }

 private:
  NavigationData data_;
};

// |v|_h of the resultant velocity whose direction makes angle theta with W.
double resultant_speed(const NavigationData& data, const Point2& p, double theta);

double evaluate_F(const RandersMetric& metric, const Point2& p, const Tangent2& t);

struct RandersDecomposition {
  Eigen::Matrix2d a_tilde;
  Eigen::Vector2d b_tilde;
  double lambda_tilde = 0.0;

  double alpha(const Tangent2& t) const { return std::sqrt(t.dot(a_tilde * t)); }
  double beta(const Tangent2& t) const { return b_tilde.dot(t); }
  // ||b~||_a~ ; strong convexity requires < 1.
  double b_norm() const { return std::sqrt(b_tilde.dot(a_tilde.ldlt().solve(b_tilde))); }
};

RandersDecomposition decompose(const RandersMetric& metric, const Point2& p);

struct EffectiveWind {
  Eigen::Vector2d w;
  double h_norm = 0.0;
  bool mild() const { return h_norm < 1.0; }
};

// W / speed; throws DomainError when speed <= 0. Does not require mildness.
EffectiveWind effective_wind(const RandersMetric& metric, const Point2& p);

// Derivatives of L = F~^2/2 in (x, y; u, v).
struct SecondOrderJet {
  double L = 0.0;
  double L_x = 0.0, L_y = 0.0, L_u = 0.0, L_v = 0.0;
  double L_uu = 0.0, L_uv = 0.0, L_vv = 0.0;
  double L_xu = 0.0, L_xv = 0.0, L_yu = 0.0, L_yv = 0.0;

  double fundamental_det() const { return L_uu * L_vv - L_uv * L_uv; }
};

SecondOrderJet jet(const RandersMetric& metric, const Point2& p, const Tangent2& t);

// Full Taylor2<4> of L in seeded order (x, y, u, v).
Taylor2<4> lagrangian(const RandersMetric& metric, const Point2& p, const Tangent2& t);

struct NavigationReconstruction {
  Eigen::Matrix2d h;
  Eigen::Vector2d wind;
  double lambda_tilde = 0.0;
};

// Inverts the decomposition given the ship speed at the base point. The
// speed picks one member of the one-parameter family of triples (h, W, |u|)
// that share (a~, b~): lambda = speed^2 (1 - ||b~||_a~^2).
NavigationReconstruction reconstruct_navigation(const RandersDecomposition& decomp, double speed);

}  // namespace zermelo
