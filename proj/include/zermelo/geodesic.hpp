#pragma once

// Time-optimal paths as F~-geodesics:
//   x' = u,  y' = v,  u' = -2 G1(x, y; u, v),  v' = -2 G2(x, y; u, v).

#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "zermelo/dopri.hpp"
#include "zermelo/spray.hpp"

namespace zermelo {

struct GeodesicState {
  Point2 p = Point2::Zero();
  Tangent2 t = Tangent2::Zero();
  double time = 0.0;
};

enum class Termination { TimeReached, LeftDomain, ConvexityViolated, StepFailure };

std::string_view to_string(Termination reason);

struct IntegratorStats {
  int accepted = 0;
  int rejected = 0;
  int rhs_evaluations = 0;
  double max_error_estimate = 0.0;
};

struct Trajectory {
  std::vector<GeodesicState> samples;
  std::vector<double> speed;  // F~ of the velocity at each sample
  IntegratorStats stats;
  Termination reason = Termination::TimeReached;
  std::vector<DenseSegment<4>> segments;

  bool empty() const { return samples.empty(); }
  const GeodesicState& back() const { return samples.back(); }
  double final_time() const { return samples.back().time; }

  // Dense-output state; time is clamped to the integrated interval.
  GeodesicState at(double time) const;

  // Largest |F~(t_k) / F~(t_0) - 1| over the samples.
  double speed_drift() const;
};

Trajectory integrate_geodesic(const SprayField& spray, const InitialCondition& ic, double t_end,
                              const Tolerance& tol = {});

// Final time of the trajectory.
double transit_time(const Trajectory& trajectory);
// Integral of F~ along the sampled path (trapezoid rule over accepted steps
// corrected with the dense output midpoints, i.e. Simpson per step).
double transit_time_quadrature(const SprayField& spray, const Trajectory& trajectory);
// Background h-length of the path, same quadrature.
double h_length(const NavigationData& data, const Trajectory& trajectory);

}  // namespace zermelo
