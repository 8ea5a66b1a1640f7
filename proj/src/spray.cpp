#include "zermelo/spray.hpp"

#include <cmath>

namespace zermelo {

Eigen::Vector2d spray_from_jet(const SecondOrderJet& j, const Tangent2& t) {
  const double det = j.fundamental_det();
  if (!(std::abs(det) >= kDegeneracyThreshold))
    throw DegeneracyError("fundamental form of F^2/2 is singular (near the convexity boundary)");
  const double a = j.L_xu * t.x() + j.L_yu * t.y() - j.L_x;
  const double b = j.L_xv * t.x() + j.L_yv * t.y() - j.L_y;
  return {(j.L_vv * a - j.L_uv * b) / (2.0 * det), (-j.L_uv * a + j.L_uu * b) / (2.0 * det)};
}

Eigen::Vector2d spray_coefficients(const SprayField& spray, const Point2& p, const Tangent2& t) {
  return spray_from_jet(jet(spray.metric(), p, t), t);
}

Tangent2 initial_velocity(const NavigationData& data, const Point2& p0, double phi0) {
  const auto s = data.sample(p0);
  if (!(s.speed > 0.0) || !(s.wind.dot(s.h * s.wind) < s.speed * s.speed))
    throw ConvexityError("mild-wind condition |W|_h < |u|_h violated at the initial point");
  const Tangent2 heading(std::cos(phi0), std::sin(phi0));
  if (data.h.is_euclidean()) return s.wind + s.speed * heading;
  return s.wind + s.speed * (orthonormal_frame(data, p0) * heading);
}

}  // namespace zermelo
