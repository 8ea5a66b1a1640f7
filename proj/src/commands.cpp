#include "zermelo/io/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zermelo/analysis.hpp"
#include "zermelo/io/csv.hpp"
#include "zermelo/io/svg.hpp"

namespace zermelo::io {

namespace fs = std::filesystem;

namespace {

constexpr double kContainmentSlack = 1e-6;
constexpr double kStrictGap = 1e-4;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

fs::path prepare(const fs::path& dir) {
  if (!dir.empty()) fs::create_directories(dir);
  return dir;
}

std::string degrees(double rad) { return format_number(std::round(rad * 180.0 / std::numbers::pi * 1e6) / 1e6); }

double wind_norm(const NavSample<double>& s) { return std::sqrt(std::max(0.0, s.wind.dot(s.h * s.wind))); }

// Horizontal boundary lines of a domain, clipped to the plot window.
void draw_domain(SvgDocument& svg, const Rect& domain, const Rect& window) {
  for (double y : {domain.y_min, domain.y_max}) {
    if (y < window.y_min || y > window.y_max) continue;
    svg.polyline({Point2(std::max(domain.x_min, window.x_min), y), Point2(std::min(domain.x_max, window.x_max), y)},
                 "boundary");
  }
}

// Wind glyphs on an nx-column lattice over the window.
void draw_wind(SvgDocument& svg, const NavigationData& data, const Rect& w, int nx) {
  const double cell = (w.x_max - w.x_min) / nx;
  const int ny = std::max(1, static_cast<int>(std::floor((w.y_max - w.y_min) / cell)));
  std::vector<std::pair<Point2, Tangent2>> glyphs;
  double wmax = 0.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Point2 p(w.x_min + cell * (i + 0.5), w.y_min + (w.y_max - w.y_min) * (j + 0.5) / ny);
      const auto s = data.sample(p);
      if (!std::isfinite(s.wind.x()) || !std::isfinite(s.wind.y())) continue;
      glyphs.emplace_back(p, s.wind);
      wmax = std::max(wmax, wind_norm(s));
    }
  }
  if (!(wmax > 0.0)) return;
  const double scale = 0.8 * std::min(cell, (w.y_max - w.y_min) / ny) / wmax;
  for (const auto& [p, v] : glyphs) svg.arrow(p - 0.5 * scale * v, scale * v, "wind");
}

// Line segments of the level set {f = level} on a grid of samples f[j][i].
std::vector<std::array<Point2, 2>> contour(const std::vector<double>& xs, const std::vector<double>& ys,
                                           const std::vector<std::vector<double>>& f, double level) {
  std::vector<std::array<Point2, 2>> segs;
  auto cut = [&](const Point2& a, double fa, const Point2& b, double fb) {
    const double s = (level - fa) / (fb - fa);
    return Point2(a + s * (b - a));
  };
  for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const std::array<Point2, 4> c{Point2(xs[i], ys[j]), Point2(xs[i + 1], ys[j]), Point2(xs[i + 1], ys[j + 1]),
                                    Point2(xs[i], ys[j + 1])};
      const std::array<double, 4> v{f[j][i], f[j][i + 1], f[j + 1][i + 1], f[j + 1][i]};
      if (!std::all_of(v.begin(), v.end(), [](double t) { return std::isfinite(t); })) continue;
      std::vector<Point2> hits;
      for (int e = 0; e < 4; ++e) {
        const int a = e, b = (e + 1) % 4;
        if ((v[a] >= level) != (v[b] >= level)) hits.push_back(cut(c[a], v[a], c[b], v[b]));
      }
      if (hits.size() >= 2) segs.push_back({hits[0], hits[1]});
      if (hits.size() == 4) segs.push_back({hits[2], hits[3]});
    }
  }
  return segs;
}

std::vector<double> sample_times(double t_final, double dt) {
  std::vector<double> ts;
  for (int k = 0;; ++k) {
    const double t = k * dt;
    if (t >= t_final - 1e-12) break;
    ts.push_back(t);
  }
  ts.push_back(t_final);
  return ts;
}

struct Series {
  MetricTag tag;
  const NavigationData* data;
};

std::array<Series, 2> both(const RunConfig& cfg) {
  return {Series{MetricTag::Classical, &cfg.classical}, Series{MetricTag::Generalized, &cfg.generalized}};
}

}  // namespace

int cmd_validate(const RunConfig& cfg, std::ostream& log) {
  const Rect& d = cfg.generalized.domain;
  const ConvexityReport rep = validate_convexity(cfg.generalized, cfg.validate_grid);
  log << "configuration: " << cfg.source << '\n'
      << "domain: x in [" << format_number(d.x_min) << ", " << format_number(d.x_max) << "], y in ["
      << format_number(d.y_min) << ", " << format_number(d.y_max) << "]\n"
      << "grid: " << cfg.validate_grid << " x " << cfg.validate_grid << '\n'
      << "samples: " << rep.samples << '\n'
      << "violations: " << rep.violations.size() << '\n';
  for (const ConvexityViolation& v : rep.violations) {
    log << "  x=" << format_number(v.p.x()) << " y=" << format_number(v.p.y())
        << " |W|_h=" << format_number(v.wind_norm) << " speed=" << format_number(v.speed);
    if (v.metric_not_positive) log << " metric-not-positive-definite";
    log << '\n';
  }
  log << "status: " << (rep.ok() ? "ok" : "violated") << '\n';
  return rep.ok() ? kSuccess : kValidationFailure;
}

int cmd_field(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  prepare(out_dir);
  const NavigationData& data = cfg.generalized;
  const Rect& e = cfg.field_extent;
  const int n = cfg.field_grid;
  if (n < 2) throw std::invalid_argument("field grid must be at least 2");

  std::vector<double> xs(n), ys(n);
  for (int k = 0; k < n; ++k) {
    xs[k] = e.x_min + (e.x_max - e.x_min) * k / (n - 1);
    ys[k] = e.y_min + (e.y_max - e.y_min) * k / (n - 1);
  }
  std::vector<std::vector<double>> margin(n, std::vector<double>(n));

  std::ostringstream csv;
  CsvWriter w(csv);
  w.row({"x", "y", "W1", "W2", "W_norm", "U", "margin", "a11", "a12", "a22", "b1", "b2", "lambda"});
  const RandersMetric metric(data);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double min_margin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const auto s = data.sample(Point2(xs[i], ys[j]));
      const double wn = wind_norm(s);
      margin[j][i] = s.speed - wn;
      min_margin = std::min(min_margin, margin[j][i]);
      RandersDecomposition r{Eigen::Matrix2d::Constant(nan), Eigen::Vector2d::Constant(nan), nan};
      try {
        r = decompose(metric, Point2(xs[i], ys[j]));
      } catch (const std::domain_error&) {
        // Outside the domain or past the mild-wind boundary: left as nan.
      }
      w.row({xs[i], ys[j], s.wind.x(), s.wind.y(), wn, s.speed, margin[j][i], r.a_tilde(0, 0), r.a_tilde(0, 1),
             r.a_tilde(1, 1), r.b_tilde.x(), r.b_tilde.y(), r.lambda_tilde});
    }
  }
  write_file(out_dir / "field.csv", csv.str());

  SvgDocument svg({e, 800.0, "wind field and speed margin |U| - |W|"});
  svg.axes();
  for (int k = 1; k <= 9; ++k) {
    for (const auto& seg : contour(xs, ys, margin, 0.1 * k)) svg.polyline({seg[0], seg[1]}, "contour");
  }
  for (const auto& seg : contour(xs, ys, margin, 0.0)) svg.polyline({seg[0], seg[1]}, "boundary");
  draw_wind(svg, data, e, std::min(n, 21));
  write_file(out_dir / "field.svg", svg.str());

  const double xc = 0.5 * (e.x_min + e.x_max);
  const auto roots = convexity_boundary(data, {AxisSlice::Axis::Y, xc, e.y_min, e.y_max, 400});
  log << "field: " << n << " x " << n << " samples, min margin " << format_number(min_margin) << '\n';
  log << "margin roots on x=" << format_number(xc) << ":";
  for (double r : roots) log << ' ' << format_number(r);
  log << (roots.empty() ? " none\n" : "\n");
  log << "wrote " << (out_dir / "field.csv").string() << " and field.svg\n";
  return kSuccess;
}

int cmd_geodesics(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  prepare(out_dir);
  const FanSpec& fan = cfg.fan;
  const std::vector<double> headings = heading_grid(fan.headings);

  std::ostringstream csv;
  CsvWriter w(csv);
  w.row({"series", "heading", "phi0", "t", "x", "y", "u", "v", "F", "status"});
  std::vector<std::pair<std::string, std::vector<Point2>>> paths;
  std::vector<Point2> all{fan.origin};

  for (const Series& s : both(cfg)) {
    const SprayField spray(*s.data);
    const std::string_view tag = to_string(s.tag);
    int completed = 0;
    double drift = 0.0;
    for (std::size_t k = 0; k < headings.size(); ++k) {
      const double phi = headings[k];
      const long long idx = static_cast<long long>(k);
      Trajectory traj;
      try {
        traj = integrate_geodesic(spray, InitialCondition::make(*s.data, fan.origin, phi), fan.t_end, cfg.integration);
      } catch (const std::domain_error& err) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        w.row({tag, idx, phi, 0.0, fan.origin.x(), fan.origin.y(), nan, nan, nan, "convexity_violated"});
        continue;
      }
      const std::string_view status = to_string(traj.reason);
      if (traj.reason == Termination::TimeReached) ++completed;
      drift = std::max(drift, traj.speed_drift());
      std::vector<Point2> pts;
      for (double t : sample_times(traj.final_time(), fan.sample_dt)) {
        const GeodesicState g = traj.at(t);
        double F = std::numeric_limits<double>::quiet_NaN();
        try {
          F = evaluate_F(spray.metric(), g.p, g.t);
        } catch (const std::exception&) {
        }
        w.row({tag, idx, phi, g.time, g.p.x(), g.p.y(), g.t.x(), g.t.y(), F, status});
        pts.push_back(g.p);
      }
      all.insert(all.end(), pts.begin(), pts.end());
      paths.emplace_back(std::string(tag), std::move(pts));
    }
    log << tag << ": " << completed << " of " << headings.size() << " headings reached t=" << format_number(fan.t_end)
        << ", max speed drift " << format_number(drift) << '\n';
  }
  write_file(out_dir / "geodesics.csv", csv.str());

  const Rect box = bounding_box(all);
  SvgDocument svg({box, 900.0, "geodesic fans, classical (red) and generalized (black)"});
  svg.axes();
  draw_domain(svg, cfg.generalized.domain, box);
  draw_wind(svg, cfg.generalized, box, 18);
  for (const auto& [tag, pts] : paths) svg.polyline(pts, tag);
  svg.circle(fan.origin, 3.0, "generalized");
  write_file(out_dir / "geodesics.svg", svg.str());
  log << "wrote " << (out_dir / "geodesics.csv").string() << " and geodesics.svg\n";
  return kSuccess;
}

int cmd_indicatrix(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  prepare(out_dir);
  const IndicatrixSpec& spec = cfg.indicatrix;
  const std::vector<double> headings = heading_grid(spec.headings);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::ostringstream csv;
  CsvWriter w(csv);
  w.row({"kind", "series", "horizon", "heading", "phi0", "x", "y", "status"});
  std::vector<Point2> all{spec.base};

  struct Curve {
    std::string cls;
    std::vector<Point2> pts;
  };
  std::vector<Curve> curves;
  std::vector<std::pair<std::string, Point2>> stops;

  std::array<Indicatrix, 2> unit;
  for (std::size_t m = 0; m < 2; ++m) {
    const Series s = both(cfg)[m];
    unit[m] = sample_indicatrix(RandersMetric(*s.data), spec.base, spec.headings, s.tag);
    Curve c{std::string(to_string(s.tag)) + " unit", {}};
    for (std::size_t k = 0; k < headings.size(); ++k) {
      const Tangent2& t = unit[m].points[k];
      w.row({"unit", to_string(s.tag), 0.0, static_cast<long long>(k), headings[k], t.x(), t.y(), "ok"});
      c.pts.push_back(spec.base + t);
    }
    all.insert(all.end(), c.pts.begin(), c.pts.end());
    curves.push_back(std::move(c));
  }
  const IntersectionReport ui = indicatrix_intersections(unit[0], unit[1]);
  log << "unit indicatrices at (" << format_number(spec.base.x()) << ", " << format_number(spec.base.y()) << "): ";
  if (ui.coincident) {
    log << "coincident\n";
  } else {
    log << ui.crossings.size() << " crossings, " << ui.touches.size() << " touches\n";
  }

  for (double T : spec.horizons) {
    std::array<ReachableSet, 2> rs;
    for (std::size_t m = 0; m < 2; ++m) {
      const Series s = both(cfg)[m];
      rs[m] = reachable_set(SprayField(*s.data), spec.base, T, headings, cfg.integration);
      const std::string_view tag = to_string(s.tag);
      Curve c{std::string(tag), {}};
      for (std::size_t k = 0; k < headings.size(); ++k) {
        const Trajectory& traj = rs[m].trajectories[k];
        const Point2 p = traj.empty() ? Point2(nan, nan) : traj.back().p;
        w.row({"front", tag, T, static_cast<long long>(k), headings[k], p.x(), p.y(), to_string(traj.reason)});
        if (traj.reason == Termination::TimeReached) {
          c.pts.push_back(p);
        } else if (!traj.empty()) {
          stops.emplace_back(std::string(tag), p);
        }
        if (!traj.empty()) all.push_back(p);
      }
      curves.push_back(std::move(c));
    }
    const ContainmentReport cr =
        front_containment(rs[0].front(MetricTag::Classical), rs[1].front(MetricTag::Generalized), kContainmentSlack);
    log << "t=" << format_number(T) << ": classical " << rs[0].endpoints.size() << "/" << headings.size()
        << " complete, generalized " << rs[1].endpoints.size() << "/" << headings.size() << " complete\n";
    log << "  generalized inside classical: " << (cr.contained ? "yes" : "no")
        << ", worst margin " << format_number(cr.worst_margin) << " at heading " << degrees(cr.worst_heading)
        << " deg\n  contact headings (deg):";
    for (double h : cr.contact_headings) log << ' ' << degrees(h);
    log << '\n';
  }
  write_file(out_dir / "indicatrix.csv", csv.str());

  const Rect box = bounding_box(all);
  SvgDocument svg({box, 800.0, "unit indicatrices (dashed) and reachable fronts"});
  svg.axes();
  draw_domain(svg, cfg.generalized.domain, box);
  for (const Curve& c : curves) svg.polyline(c.pts, c.cls, true);
  for (const auto& [tag, p] : stops) svg.circle(p, 2.0, tag);
  svg.circle(spec.base, 3.0, "generalized");
  write_file(out_dir / "indicatrix.svg", svg.str());
  log << "wrote " << (out_dir / "indicatrix.csv").string() << " and indicatrix.svg\n";
  return kSuccess;
}

int cmd_compare(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  const CompareSpec& spec = cfg.compare;
  if (spec.pairs.empty()) {
    log << "compare: no point pairs configured\n";
    return kParseFailure;
  }
  prepare(out_dir);
  ShootingOptions opt;
  opt.horizon = spec.horizon;
  opt.scan = spec.scan;
  opt.integration = cfg.integration;

  std::ostringstream csv;
  CsvWriter w(csv);
  w.row({"x0", "y0", "x1", "y1", "t_classical", "t_generalized", "gap", "flag"});
  int violated = 0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const ComparePair& pr : spec.pairs) {
    TransitComparison c;
    try {
      c = transit_comparison(cfg.generalized, pr.p0, pr.target, spec.tolerance, opt);
    } catch (const std::domain_error&) {
      c.available = false;
    }
    std::string_view flag;
    if (!c.available) {
      flag = "unavailable";
    } else if (!c.inequality_holds) {
      flag = "violated";
      ++violated;
    } else if (c.unit_speed_path) {
      flag = "unit_speed_path";
    } else {
      flag = c.gap > kStrictGap ? "strict_gap" : "weak_gap";
    }
    if (c.available) {
      w.row({pr.p0.x(), pr.p0.y(), pr.target.x(), pr.target.y(), c.t_classical, c.t_generalized, c.gap, flag});
    } else {
      w.row({pr.p0.x(), pr.p0.y(), pr.target.x(), pr.target.y(), nan, nan, nan, flag});
    }
    log << "(" << format_number(pr.p0.x()) << ", " << format_number(pr.p0.y()) << ") -> ("
        << format_number(pr.target.x()) << ", " << format_number(pr.target.y()) << "): " << flag;
    if (c.available) log << ", gap " << format_number(c.gap);
    log << '\n';
  }
  write_file(out_dir / "compare.csv", csv.str());
  log << "wrote " << (out_dir / "compare.csv").string() << '\n';
  return violated == 0 ? kSuccess : kValidationFailure;
}

int run_command(std::string_view verb, const RunConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  if (verb == "validate") return cmd_validate(cfg, log);
  if (verb == "field") return cmd_field(cfg, out_dir, log);
  if (verb == "geodesics") return cmd_geodesics(cfg, out_dir, log);
  if (verb == "indicatrix") return cmd_indicatrix(cfg, out_dir, log);
  if (verb == "compare") return cmd_compare(cfg, out_dir, log);
  throw std::invalid_argument("unknown command '" + std::string(verb) + "'");
}

}  // namespace zermelo::io
