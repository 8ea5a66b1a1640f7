#include "zermelo/navigation.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace zermelo {

bool MetricField::is_euclidean() const {
  return h11.is_constant() && h12.is_constant() && h22.is_constant() && h11(Point2::Zero()) == 1.0 &&
         h12(Point2::Zero()) == 0.0 && h22(Point2::Zero()) == 1.0;
}

NavigationData NavigationData::with_unit_speed() const {
  NavigationData d = *this;
  d.speed = Expression::constant(1.0);
  return d;
}

void require_in_domain(const NavigationData& data, const Point2& p) {
  if (!data.domain.contains(p)) {
    std::ostringstream os;
    os << "point (" << p.x() << ", " << p.y() << ") outside the domain of validity";
    throw DomainError(os.str());
  }
}

double h_inner(const NavigationData& data, const Point2& p, const Tangent2& a, const Tangent2& b) {
  require_in_domain(data, p);
  const auto s = data.sample(p);
  // Written so that swapping a and b reorders only commutative operations,
  // which keeps the result bitwise symmetric.
  return s.h(0, 0) * (a.x() * b.x()) + s.h(0, 1) * (a.x() * b.y() + a.y() * b.x()) + s.h(1, 1) * (a.y() * b.y());
}

double h_norm(const NavigationData& data, const Point2& p, const Tangent2& t) {
  return std::sqrt(std::max(0.0, h_inner(data, p, t, t)));
}

Eigen::Matrix2d orthonormal_frame(const NavigationData& data, const Point2& p) {
  const Eigen::Matrix2d h = data.sample(p).h;
  Eigen::LLT<Eigen::Matrix2d> llt(h);
  if (llt.info() != Eigen::Success) throw DomainError("background metric not positive definite");
  // h = L L^T  =>  E = L^{-T} satisfies E^T h E = I.
  const Eigen::Matrix2d L = llt.matrixL();
  return L.transpose().inverse();
}

ConvexityReport validate_convexity(const NavigationData& data, int grid) {
  if (grid < 2) throw std::invalid_argument("grid resolution must be at least 2 per axis");
  ConvexityReport report;
  const Rect& r = data.domain;
  for (int j = 0; j < grid; ++j) {
    const double y = r.y_min + (r.y_max - r.y_min) * j / (grid - 1);
    for (int i = 0; i < grid; ++i) {
      const double x = r.x_min + (r.x_max - r.x_min) * i / (grid - 1);
      const Point2 p(x, y);
      const auto s = data.sample(p);
      ++report.samples;
      const double det = s.h(0, 0) * s.h(1, 1) - s.h(0, 1) * s.h(1, 0);
      const bool metric_bad = !(s.h(0, 0) > 0.0) || !(det > 0.0);
      const double wind_norm = std::sqrt(std::max(0.0, s.wind.dot(s.h * s.wind)));
      if (metric_bad || !(wind_norm < s.speed) || s.speed > 1.0 || !(s.speed > 0.0))
        report.violations.push_back({p, wind_norm, s.speed, metric_bad});
    }
  }
  return report;
}

std::vector<double> convexity_boundary(const NavigationData& data, const AxisSlice& slice) {
  auto point = [&](double s) {
    return slice.vary == AxisSlice::Axis::Y ? Point2(slice.fixed, s) : Point2(s, slice.fixed);
  };
  auto margin = [&](double s) {
    const auto n = data.sample(point(s));
    return n.speed - std::sqrt(std::max(0.0, n.wind.dot(n.h * n.wind)));
  };

  std::vector<double> roots;
  const int n = std::max(1, slice.subdivisions);
  double a = slice.lo;
  double fa = margin(a);
  for (int k = 1; k <= n; ++k) {
    const double b = slice.lo + (slice.hi - slice.lo) * k / n;
    const double fb = margin(b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = margin(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  if (fa == 0.0) roots.push_back(a);
  return roots;
}

}  // namespace zermelo
