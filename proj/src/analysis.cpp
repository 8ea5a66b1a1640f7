#include "zermelo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace zermelo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498949;  // 1 / golden ratio

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

// Golden-section minimization of f on [a, b].
template <class F>
std::pair<double, double> golden_min(F f, double a, double b, double width) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > width) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace

std::string_view to_string(MetricTag tag) {
  return tag == MetricTag::Classical ? "classical" : "generalized";
}

std::vector<double> heading_grid(int n) {
  if (n < 1) throw std::invalid_argument("heading grid needs at least one heading");
  std::vector<double> h(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) h[static_cast<std::size_t>(k)] = kTwoPi * k / n;
  return h;
}

double Indicatrix::radius(double psi) const {
  const Eigen::Vector2d d(std::cos(psi), std::sin(psi));
  double best = std::numeric_limits<double>::quiet_NaN();
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& P = points[i];
    const Eigen::Vector2d e = points[(i + 1) % n] - P;
    const double den = cross(d, e);
    if (den == 0.0) continue;
    const double r = cross(P, e) / den;
    const double s = cross(P, d) / den;
    if (s < -1e-12 || s > 1.0 + 1e-12 || !(r > 0.0)) continue;
    if (std::isnan(best) || r > best) best = r;
  }
  return best;
}

Indicatrix sample_indicatrix(const RandersMetric& metric, const Point2& p, int n, MetricTag tag) {
  if (n < 8) throw std::invalid_argument("indicatrix needs at least 8 headings");
  const NavigationData& data = metric.data();
  Indicatrix ind;
  ind.base = p;
  ind.tag = tag;
  ind.headings = heading_grid(n);
  for (double phi : ind.headings) {
    const Tangent2 t = initial_velocity(data, p, phi);
    const double residual = std::abs(evaluate_F(metric, p, t) - 1.0);
    ind.max_residual = std::max(ind.max_residual, residual);
    ind.points.push_back(t);
  }
  if (!(ind.max_residual <= 1e-10)) throw ConvexityError("indicatrix sample misses the unit level set");
  return ind;
}

IntersectionReport indicatrix_intersections(const Indicatrix& a, const Indicatrix& b) {
  if ((a.base - b.base).norm() > 1e-12) throw std::invalid_argument("indicatrices at different base points");
  auto diff = [&](double psi) { return a.radius(psi) - b.radius(psi); };
  auto sign = [](double d) { return std::abs(d) <= kRadialDeadband ? 0 : (d > 0.0 ? 1 : -1); };

  const int m = static_cast<int>(std::max<std::size_t>(720, 4 * std::max(a.points.size(), b.points.size())));
  std::vector<double> psi(static_cast<std::size_t>(m));
  std::vector<int> sg(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    psi[k] = kTwoPi * k / m;
    sg[k] = sign(diff(psi[k]));
  }

  IntersectionReport rep;
  if (std::all_of(sg.begin(), sg.end(), [](int s) { return s == 0; })) {
    rep.coincident = true;
    return rep;
  }

  // Rotate so that scanning starts on a nonzero sample.
  int start = 0;
  while (sg[start] == 0) ++start;
  int prev = start;
  for (int step = 1; step <= m; ++step) {
    const int k = (start + step) % m;
    if (sg[k] == 0) continue;
    const int gap = (k - prev + m) % m;  // samples strictly between are inside the deadband
    const double lo = psi[prev];
    const double hi = lo + kTwoPi * (gap == 0 ? m : gap) / m;
    if (sg[k] != sg[prev]) {
      double l = lo, h = hi;
      const int sl = sg[prev];
      while (h - l > 1e-9) {
        const double mid = 0.5 * (l + h);
        const double dm = diff(mid);
        if ((dm > 0.0 ? 1 : -1) == sl) l = mid; else h = mid;
      }
      rep.crossings.push_back(std::fmod(0.5 * (l + h), kTwoPi));
    } else if (gap > 1) {
      rep.touches.push_back(std::fmod(0.5 * (lo + hi), kTwoPi));
    }
    prev = k;
  }
  std::sort(rep.crossings.begin(), rep.crossings.end());
  std::sort(rep.touches.begin(), rep.touches.end());
  const bool any_pos = std::any_of(sg.begin(), sg.end(), [](int s) { return s > 0; });
  const bool any_neg = std::any_of(sg.begin(), sg.end(), [](int s) { return s < 0; });
  rep.a_contains_b = !any_neg && rep.crossings.empty();
  rep.b_contains_a = !any_pos && rep.crossings.empty();
  return rep;
}

ContainmentReport front_containment(const Indicatrix& outer, const Indicatrix& inner, double slack) {
  if ((outer.base - inner.base).norm() > 1e-12) throw std::invalid_argument("fronts about different base points");
  ContainmentReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < inner.points.size(); ++i) {
    const Tangent2& q = inner.points[i];
    const double r = q.norm();
    double margin = 0.0;
    if (r > 0.0) {
      const double r_out = outer.radius(std::atan2(q.y(), q.x()));
      margin = std::isnan(r_out) ? -r : r_out - r;
    }
    ++rep.checked;
    const double heading = i < inner.headings.size() ? inner.headings[i] : 0.0;
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_heading = heading;
    }
    if (std::abs(margin) <= slack) rep.contact_headings.push_back(heading);
  }
  rep.contained = rep.checked > 0 && rep.worst_margin >= -slack;
  return rep;
}

Indicatrix ReachableSet::front(MetricTag tag) const {
  Indicatrix ind;
  ind.base = base;
  ind.tag = tag;
  ind.headings = endpoint_headings;
  for (const Point2& e : endpoints) ind.points.push_back(e - base);
  return ind;
}

ReachableSet reachable_set(const SprayField& spray, const Point2& p0, double horizon,
                           const std::vector<double>& headings, const Tolerance& tol) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  ReachableSet rs;
  rs.base = p0;
  rs.horizon = horizon;
  rs.headings = headings;
  rs.trajectories.reserve(headings.size());
  for (double phi : headings) {
    Trajectory traj = integrate_geodesic(spray, InitialCondition::make(spray.data(), p0, phi), horizon, tol);
    if (traj.reason == Termination::TimeReached) {
      rs.endpoint_headings.push_back(phi);
      rs.endpoints.push_back(traj.back().p);
    } else {
      rs.terminations.push_back({phi, traj.reason, traj.back()});
    }
    rs.trajectories.push_back(std::move(traj));
  }
  return rs;
}

ClosestApproach closest_approach(const Trajectory& trajectory, const Point2& target) {
  if (trajectory.empty()) throw std::invalid_argument("empty trajectory");
  const auto& s = trajectory.samples;
  std::size_t best = 0;
  double best_d = (s[0].p - target).norm();
  for (std::size_t k = 1; k < s.size(); ++k) {
    const double d = (s[k].p - target).norm();
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  if (s.size() == 1) return {s[0].time, best_d};
  const double lo = s[best == 0 ? 0 : best - 1].time;
  const double hi = s[std::min(best + 1, s.size() - 1)].time;
  auto dist = [&](double t) { return (trajectory.at(t).p - target).norm(); };
  auto [t, d] = golden_min(dist, lo, hi, 1e-13 * std::max(1.0, hi));
  if (best_d <= d) return {s[best].time, best_d};
  return {t, d};
}

ShootingResult shoot_to_target(const SprayField& spray, const Point2& p0, const Point2& target, double tolerance,
                               const HeadingBracket& bracket, const ShootingOptions& options) {
  const double span = bracket.hi - bracket.lo;
  if (!(span > 0.0)) throw std::invalid_argument("empty heading bracket");
  const bool periodic = span >= kTwoPi - 1e-12;
  const int n = std::max(options.scan, 4);

  auto run = [&](double phi) {
    return integrate_geodesic(spray, InitialCondition::make(spray.data(), p0, phi), options.horizon,
                              options.integration);
  };
  auto miss = [&](double phi) { return closest_approach(run(phi), target).distance; };

  const int count = periodic ? n : n + 1;
  std::vector<double> phi(static_cast<std::size_t>(count)), d(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    phi[i] = bracket.lo + span * i / n;
    d[i] = miss(phi[i]);
  }

  // Local minima of the coarse scan, most promising first.
  std::vector<int> minima;
  for (int i = 0; i < count; ++i) {
    const int l = periodic ? (i - 1 + count) % count : i - 1;
    const int r = periodic ? (i + 1) % count : i + 1;
    const bool left_ok = l < 0 || d[i] <= d[l];
    const bool right_ok = r >= count || d[i] < d[r];
    if (left_ok && right_ok) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(), [&](int a, int b) { return d[a] < d[b]; });
  if (static_cast<int>(minima.size()) > options.refine) minima.resize(static_cast<std::size_t>(options.refine));

  ShootingResult result;
  result.target = target;
  result.position_error = std::numeric_limits<double>::infinity();
  const double step = span / n;
  for (int i : minima) {
    const double lo = periodic ? phi[i] - step : std::max(bracket.lo, phi[i] - step);
    const double hi = periodic ? phi[i] + step : std::min(bracket.hi, phi[i] + step);
    auto [best_phi, best_d] = golden_min(miss, lo, hi, 1e-13);
    if (d[i] < best_d) {
      best_phi = phi[i];
      best_d = d[i];
    }
    if (periodic) best_phi = std::fmod(std::fmod(best_phi, kTwoPi) + kTwoPi, kTwoPi);
    Trajectory path = run(best_phi);
    const ClosestApproach ca = closest_approach(path, target);
    const bool hit = ca.distance <= tolerance;
    const bool better = hit ? (!result.found || ca.time < result.arrival_time)
                            : (!result.found && ca.distance < result.position_error);
    if (better) {
      result.found = hit;
      result.phi0 = best_phi;
      result.arrival_time = ca.time;
      result.position_error = ca.distance;
      result.path = std::move(path);
    }
  }
  return result;
}

TransitComparison transit_comparison(const NavigationData& data, const Point2& p0, const Point2& target,
                                           double tolerance, const ShootingOptions& options) {
  TransitComparison cmp;
  cmp.p0 = p0;
  cmp.target = target;
  const SprayField generalized(data);
  const SprayField classical(data.with_unit_speed());
  cmp.classical = shoot_to_target(classical, p0, target, tolerance, {}, options);
  cmp.generalized = shoot_to_target(generalized, p0, target, tolerance, {}, options);
  cmp.available = cmp.classical.found && cmp.generalized.found;
  if (!cmp.available) return cmp;

  cmp.t_classical = cmp.classical.arrival_time;
  cmp.t_generalized = cmp.generalized.arrival_time;
  cmp.gap = cmp.t_generalized - cmp.t_classical;
  cmp.inequality_holds = cmp.t_generalized >= cmp.t_classical - kTransitSlack;
  for (const GeodesicState& s : cmp.generalized.path.samples) {
    if (s.time > cmp.t_generalized) break;
    cmp.max_offaxis = std::max(cmp.max_offaxis, std::abs(data.speed(s.p) - 1.0));
  }
  cmp.unit_speed_path = cmp.max_offaxis <= 1e-9;
  return cmp;
}

}  // namespace zermelo
