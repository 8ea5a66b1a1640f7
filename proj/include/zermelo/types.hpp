#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace zermelo {

template <class T>
using Vec2 = Eigen::Matrix<T, 2, 1>;
template <class T>
using Mat2 = Eigen::Matrix<T, 2, 2>;

// Chart coordinates (x, y) of a base point.
using Point2 = Vec2<double>;
// Tangent vector (u, v) at a base point, in chart components.
using Tangent2 = Vec2<double>;

// Closed axis-aligned rectangle of validity.
struct Rect {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  bool contains(const Point2& p) const {
    return p.x() >= x_min && p.x() <= x_max && p.y() >= y_min && p.y() <= y_max;
  }
  bool degenerate() const { return !(x_max > x_min) || !(y_max > y_min); }
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Mild-wind condition |W|_h < speed violated, or speed not positive.
struct ConvexityError : std::domain_error {
  using std::domain_error::domain_error;
};

// A formula needs a nonzero tangent vector.
struct DegenerateVectorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Fundamental form of L = F^2/2 numerically singular.
struct DegeneracyError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ReconstructionError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ")"),
        line(line),
        column(column) {}
  int line;
  int column;
};

}  // namespace zermelo
