#pragma once

// Experiments on top of the geodesic solver: indicatrices, reachable
// fronts, target shooting and transit-time comparisons between the
// classical (unit speed) and generalized metrics.

#include <optional>
#include <string_view>
#include <vector>

#include "zermelo/geodesic.hpp"

namespace zermelo {

enum class MetricTag { Classical, Generalized };

std::string_view to_string(MetricTag tag);

// n equally spaced headings 2 pi k / n, k = 0..n-1.
std::vector<double> heading_grid(int n);

// A closed curve in the tangent plane at `base`, sampled in heading order.
// For a unit indicatrix the points are tangent vectors with F~ = 1; for a
// reachable front they are displacements endpoint - base.
struct Indicatrix {
  Point2 base = Point2::Zero();
  MetricTag tag = MetricTag::Generalized;
  std::vector<double> headings;
  std::vector<Tangent2> points;
  double max_residual = 0.0;  // max |F~(t) - 1| for unit indicatrices

  // Distance from the origin to the curve along direction psi (farthest
  // hit when the ray meets the polygon more than once).
  double radius(double psi) const;
};

// W(p) + speed(p) (cos phi, sin phi) in the h-orthonormal frame. Throws
// ConvexityError when mildness fails at p or any sample misses F~ = 1 by
// more than 1e-10.
Indicatrix sample_indicatrix(const RandersMetric& metric, const Point2& p, int n,
                             MetricTag tag = MetricTag::Generalized);

struct IntersectionReport {
  std::vector<double> crossings;  // transversal sign changes of r_a - r_b
  std::vector<double> touches;    // tangential contacts within the deadband
  bool coincident = false;
  bool a_contains_b = false;
  bool b_contains_a = false;
};

inline constexpr double kRadialDeadband = 1e-10;

// Compares the radial profiles of two closed curves about their common base
// point. Crossing directions are bisected to 1e-8 rad.
IntersectionReport indicatrix_intersections(const Indicatrix& a, const Indicatrix& b);

// Radial containment of one closed curve in another about a shared base
// point. Each inner point q is compared with the outer radius along the
// direction of q (farthest hit, so self-overlapping fronts count their
// outermost sheet). margin = r_outer - |q|; contact means |margin| <= slack.
struct ContainmentReport {
  int checked = 0;
  double worst_margin = 0.0;          // smallest margin over inner points
  double worst_heading = 0.0;         // inner heading attaining it
  std::vector<double> contact_headings;
  bool contained = false;             // every margin >= -slack
};

ContainmentReport front_containment(const Indicatrix& outer, const Indicatrix& inner, double slack);

struct ReachableSet {
  Point2 base = Point2::Zero();
  double horizon = 0.0;
  std::vector<double> headings;            // full heading grid
  std::vector<Trajectory> trajectories;    // one per heading, grid order
  std::vector<double> endpoint_headings;   // headings that reached the horizon
  std::vector<Point2> endpoints;

  struct EarlyStop {
    double heading;
    Termination reason;
    GeodesicState last;
  };
  std::vector<EarlyStop> terminations;

  // Endpoints as a closed front about the base point.
  Indicatrix front(MetricTag tag) const;
};

ReachableSet reachable_set(const SprayField& spray, const Point2& p0, double horizon,
                           const std::vector<double>& headings, const Tolerance& tol = {});

struct ClosestApproach {
  double time = 0.0;
  double distance = 0.0;
};

ClosestApproach closest_approach(const Trajectory& trajectory, const Point2& target);

struct ShootingOptions {
  double horizon = 10.0;  // integration length per candidate heading
  int scan = 72;          // coarse headings across the bracket
  int refine = 3;         // local minima refined by golden section
  Tolerance integration;
};

struct ShootingResult {
  Point2 target = Point2::Zero();
  double phi0 = 0.0;
  double arrival_time = 0.0;
  double position_error = 0.0;
  bool found = false;
  Trajectory path;
};

// Heading bracket [lo, hi]; a bracket spanning 2 pi is treated as periodic.
struct HeadingBracket {
  double lo = 0.0;
  double hi = 6.283185307179586;
};

// Finds phi0 whose geodesic passes within `tolerance` of the target by
// golden-section refinement of the closest-approach distance. Among all
// refined headings that hit the target the earliest arrival wins. A miss
// is reported through `found`, not thrown.
ShootingResult shoot_to_target(const SprayField& spray, const Point2& p0, const Point2& target, double tolerance,
                               const HeadingBracket& bracket = {}, const ShootingOptions& options = {});

struct TransitComparison {
  Point2 p0 = Point2::Zero();
  Point2 target = Point2::Zero();
  bool available = false;
  double t_classical = 0.0;
  double t_generalized = 0.0;
  double gap = 0.0;               // t_generalized - t_classical
  bool inequality_holds = false;  // t_generalized >= t_classical - 1e-6
  bool unit_speed_path = false;   // generalized path stays where speed == 1
  double max_offaxis = 0.0;       // max |speed - 1| along the generalized path
  ShootingResult classical;
  ShootingResult generalized;
};

inline constexpr double kTransitSlack = 1e-6;

// Shoots the same target under the classical metric (speed = 1) and the
// generalized one built from `data`.
TransitComparison transit_comparison(const NavigationData& data, const Point2& p0, const Point2& target,
                                           double tolerance, const ShootingOptions& options = {});

}  // namespace zermelo
