#include "zermelo/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zermelo {

namespace {

using State = Eigen::Matrix<double, 4, 1>;

GeodesicState unpack(const State& s, double time) {
  return {Point2(s[0], s[1]), Tangent2(s[2], s[3]), time};
}

double safe_speed(const RandersMetric& metric, const Point2& p, const Tangent2& t) {
  try {
    return evaluate_F(metric, p, t);
  } catch (const std::exception&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::string_view to_string(Termination reason) {
  switch (reason) {
    case Termination::TimeReached: return "time_reached";
    case Termination::LeftDomain: return "left_domain";
    case Termination::ConvexityViolated: return "convexity_violated";
    case Termination::StepFailure: return "step_failure";
  }
  return "unknown";
}

GeodesicState Trajectory::at(double time) const {
  if (samples.empty()) throw std::logic_error("empty trajectory");
  if (time <= samples.front().time || segments.empty()) return samples.front();
  if (time >= samples.back().time) return samples.back();
  auto it = std::upper_bound(segments.begin(), segments.end(), time,
                             [](double t, const DenseSegment<4>& s) { return t < s.t0; });
  const DenseSegment<4>& seg = *std::prev(it);
  return unpack(seg(time), time);
}

double Trajectory::speed_drift() const {
  if (speed.empty()) return 0.0;
  double drift = 0.0;
  for (double s : speed) drift = std::max(drift, std::abs(s / speed.front() - 1.0));
  return drift;
}

Trajectory integrate_geodesic(const SprayField& spray, const InitialCondition& ic, double t_end,
                              const Tolerance& tol) {
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  const NavigationData& data = spray.data();
  require_in_domain(data, ic.p0);
  if (ic.velocity.isZero(0.0)) throw DegenerateVectorError("initial velocity must be nonzero");

  Trajectory traj;
  auto rhs = [&](double, const State& s) {
    ++traj.stats.rhs_evaluations;
    const Eigen::Vector2d g = spray_coefficients(spray, Point2(s[0], s[1]), Tangent2(s[2], s[3]));
    return State(s[2], s[3], -2.0 * g[0], -2.0 * g[1]);
  };
  auto record = [&](const State& s, double time) {
    traj.samples.push_back(unpack(s, time));
    traj.speed.push_back(safe_speed(spray.metric(), traj.samples.back().p, traj.samples.back().t));
  };

  State y(ic.p0.x(), ic.p0.y(), ic.velocity.x(), ic.velocity.y());
  double t = 0.0;
  record(y, t);

  State k1;
  try {
    k1 = rhs(t, y);
  } catch (const std::domain_error&) {
    traj.reason = Termination::ConvexityViolated;
    return traj;
  }

  // Initial step from the scaled size of the state and its derivative.
  double h;
  {
    double d0 = 0.0, d1 = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double sk = tol.abs + tol.rel * std::abs(y[i]);
      d0 += (y[i] / sk) * (y[i] / sk);
      d1 += (k1[i] / sk) * (k1[i] / sk);
    }
    d0 = std::sqrt(d0 / 4);
    d1 = std::sqrt(d1 / 4);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, t_end);
  }

  bool last_rejected = false;
  int steps = 0;
  while (t < t_end) {
    if (++steps > tol.max_steps) {
      traj.reason = Termination::StepFailure;
      break;
    }
    const bool final_step = h >= t_end - t;
    if (final_step) h = t_end - t;

    DopriTrial<4> trial;
    bool stage_failed = false;
    try {
      trial = dopri_step<4>(rhs, t, y, k1, h, tol);
      stage_failed = !std::isfinite(trial.error) || !trial.y1.allFinite();
    } catch (const std::domain_error&) {
      stage_failed = true;
    } catch (const DegenerateVectorError&) {
      stage_failed = true;
    }
    if (stage_failed) {
      ++traj.stats.rejected;
      h *= 0.25;
      last_rejected = true;
      if (h < tol.min_step * std::max(1.0, std::abs(t))) {
        traj.reason = Termination::ConvexityViolated;
        break;
      }
      continue;
    }

    if (trial.error > 1.0) {
      ++traj.stats.rejected;
      h *= std::max(0.2, dopri_factor(trial.error));
      last_rejected = true;
      if (h < tol.min_step * std::max(1.0, std::abs(t))) {
        traj.reason = Termination::StepFailure;
        break;
      }
      continue;
    }

    ++traj.stats.accepted;
    traj.stats.max_error_estimate = std::max(traj.stats.max_error_estimate, trial.error);
    const double t_new = final_step ? t_end : t + h;

    if (!data.domain.contains(Point2(trial.y1[0], trial.y1[1]))) {
      // Bisect the continuous extension for the last in-domain time.
      double lo = t, hi = t_new;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const State s = trial.dense(mid);
        (data.domain.contains(Point2(s[0], s[1])) ? lo : hi) = mid;
      }
      if (lo > t) {
        traj.segments.push_back(trial.dense);
        record(trial.dense(lo), lo);
      }
      traj.reason = Termination::LeftDomain;
      break;
    }

    traj.segments.push_back(trial.dense);
    t = t_new;
    y = trial.y1;
    k1 = trial.k7;
    record(y, t);

    double factor = dopri_factor(trial.error);
    if (last_rejected) factor = std::min(1.0, factor);
    last_rejected = false;
    h *= factor;
  }
  return traj;
}

double transit_time(const Trajectory& trajectory) {
  if (trajectory.empty()) throw std::invalid_argument("empty trajectory");
  return trajectory.final_time();
}

namespace {

template <class Integrand>
double simpson_along(const Trajectory& traj, Integrand f) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
    const GeodesicState& a = traj.samples[k];
    const GeodesicState& b = traj.samples[k + 1];
    const GeodesicState mid = traj.at(0.5 * (a.time + b.time));
    total += (b.time - a.time) / 6.0 * (f(a) + 4.0 * f(mid) + f(b));
  }
  return total;
}

}  // namespace

double transit_time_quadrature(const SprayField& spray, const Trajectory& trajectory) {
  if (trajectory.empty()) throw std::invalid_argument("empty trajectory");
  return simpson_along(trajectory,
                       [&](const GeodesicState& s) { return evaluate_F(spray.metric(), s.p, s.t); });
}

double h_length(const NavigationData& data, const Trajectory& trajectory) {
  return simpson_along(trajectory, [&](const GeodesicState& s) {
    const auto n = data.sample(s.p);
    return std::sqrt(s.t.dot(n.h * s.t));
  });
}

}  // namespace zermelo
