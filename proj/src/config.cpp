#include "zermelo/io/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string_view>
#include <tuple>

#include <yaml-cpp/yaml.h>

namespace zermelo::io {

namespace {

using Constants = std::map<std::string, double>;

ParseError error_at(const YAML::Node& node, const std::string& what) {
  const YAML::Mark m = node.Mark();
  return ParseError(what, m.line + 1, m.column + 1);
}

void allow_keys(const YAML::Node& map, std::string_view section, std::initializer_list<std::string_view> keys) {
  if (!map.IsMap()) throw error_at(map, std::string(section) + " must be a mapping");
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    bool known = false;
    for (std::string_view k : keys) known = known || key == k;
    if (!known) throw error_at(kv.first, "unknown key '" + key + "' in " + std::string(section));
  }
}

YAML::Node require(const YAML::Node& map, const char* key, std::string_view section) {
  YAML::Node n = map[key];
  if (!n) throw error_at(map, "missing '" + std::string(key) + "' in " + std::string(section));
  return n;
}

double number(const YAML::Node& node, std::string_view what) {
  if (!node.IsScalar()) throw error_at(node, std::string(what) + " must be a number");
  const std::string& s = node.Scalar();
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw error_at(node, std::string(what) + ": '" + s + "' is not a finite number");
  return v;
}

int integer(const YAML::Node& node, std::string_view what, int lo, int hi) {
  if (!node.IsScalar()) throw error_at(node, std::string(what) + " must be an integer");
  const std::string& s = node.Scalar();
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw error_at(node, std::string(what) + " must be an integer");
  if (v < lo || v > hi) {
    std::ostringstream os;
    os << what << " = " << v << " outside [" << lo << ", " << hi << "]";
    throw error_at(node, os.str());
  }
  return v;
}

double positive(const YAML::Node& node, std::string_view what) {
  const double v = number(node, what);
  if (!(v > 0.0)) throw error_at(node, std::string(what) + " must be positive");
  return v;
}

Expression expression(const YAML::Node& node, const Constants& constants, std::string_view what) {
  if (!node.IsScalar()) throw error_at(node, std::string(what) + " must be an expression string");
  try {
    return Expression::parse(node.Scalar(), constants);
  } catch (const ParseError& e) {
    // Quoted scalars carry the non-specific tag "!" and start one column
    // before their text.
    const YAML::Mark m = node.Mark();
    const int quote = node.Tag() == "!" ? 1 : 0;
    std::string msg = e.what();
    msg = msg.substr(0, msg.rfind(" (line"));
    throw ParseError(std::string(what) + ": " + msg, m.line + 1, m.column + quote + e.column);
  }
}

std::pair<double, double> interval(const YAML::Node& node, std::string_view what) {
  if (!node.IsSequence() || node.size() != 2) throw error_at(node, std::string(what) + " must be [lo, hi]");
  const double lo = number(node[0], what);
  const double hi = number(node[1], what);
  if (!(hi > lo)) throw error_at(node, std::string(what) + " must satisfy lo < hi");
  return {lo, hi};
}

Point2 point(const YAML::Node& node, std::string_view what) {
  if (!node.IsSequence() || node.size() != 2) throw error_at(node, std::string(what) + " must be [x, y]");
  return {number(node[0], what), number(node[1], what)};
}

Rect rect(const YAML::Node& node, std::string_view what) {
  allow_keys(node, what, {"x", "y"});
  const auto [x0, x1] = interval(require(node, "x", what), std::string(what) + ".x");
  const auto [y0, y1] = interval(require(node, "y", what), std::string(what) + ".y");
  return {x0, x1, y0, y1};
}

Constants constants(const YAML::Node& node) {
  Constants c;
  if (!node) return c;
  if (!node.IsMap()) throw error_at(node, "constants must be a mapping");
  for (const auto& kv : node) {
    const std::string name = kv.first.as<std::string>();
    const bool ident = !name.empty() && std::isalpha(static_cast<unsigned char>(name[0])) &&
                       std::all_of(name.begin(), name.end(), [](char ch) {
                         return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
                       });
    static const char* reserved[] = {"x", "y", "pi", "sin", "cos", "exp"};
    const bool clash = std::any_of(std::begin(reserved), std::end(reserved), [&](const char* r) { return name == r; });
    if (!ident || clash) throw error_at(kv.first, "invalid constant name '" + name + "'");
    c[name] = number(kv.second, "constant " + name);
  }
  return c;
}

void load_problem(const YAML::Node& node, const Constants& c, RunConfig& cfg) {
  allow_keys(node, "problem", {"metric", "wind", "speed", "domain", "classical_domain"});
  NavigationData& d = cfg.generalized;
  if (const YAML::Node m = node["metric"]) {
    allow_keys(m, "problem.metric", {"h11", "h12", "h22"});
    d.h.h11 = expression(require(m, "h11", "problem.metric"), c, "h11");
    d.h.h12 = expression(require(m, "h12", "problem.metric"), c, "h12");
    d.h.h22 = expression(require(m, "h22", "problem.metric"), c, "h22");
  }
  const YAML::Node w = require(node, "wind", "problem");
  allow_keys(w, "problem.wind", {"w1", "w2"});
  d.wind.w1 = expression(require(w, "w1", "problem.wind"), c, "w1");
  d.wind.w2 = expression(require(w, "w2", "problem.wind"), c, "w2");
  d.speed = expression(require(node, "speed", "problem"), c, "speed");
  d.domain = rect(require(node, "domain", "problem"), "problem.domain");

  cfg.classical = d.with_unit_speed();
  if (const YAML::Node cd = node["classical_domain"]) cfg.classical.domain = rect(cd, "problem.classical_domain");
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(source + ": " + e.msg, e.mark.line + 1, e.mark.column + 1);
  }

  RunConfig cfg;
  cfg.source = source;
  try {
    if (!root.IsMap()) throw ParseError("configuration must be a mapping", 1, 1);
    allow_keys(root, "configuration",
               {"constants", "problem", "validate", "field", "integration", "geodesics", "indicatrix", "compare"});
    const Constants c = constants(root["constants"]);
    load_problem(require(root, "problem", "configuration"), c, cfg);
    cfg.field_extent = cfg.generalized.domain;

    if (const YAML::Node v = root["validate"]) {
      allow_keys(v, "validate", {"grid"});
      if (v["grid"]) cfg.validate_grid = integer(v["grid"], "validate.grid", 2, 4001);
    }
    if (const YAML::Node f = root["field"]) {
      allow_keys(f, "field", {"grid", "x", "y"});
      if (f["grid"]) cfg.field_grid = integer(f["grid"], "field.grid", 2, 4001);
      if (f["x"]) std::tie(cfg.field_extent.x_min, cfg.field_extent.x_max) = interval(f["x"], "field.x");
      if (f["y"]) std::tie(cfg.field_extent.y_min, cfg.field_extent.y_max) = interval(f["y"], "field.y");
    }
    if (const YAML::Node i = root["integration"]) {
      allow_keys(i, "integration", {"rel", "abs", "max_steps"});
      if (i["rel"]) cfg.integration.rel = positive(i["rel"], "integration.rel");
      if (i["abs"]) cfg.integration.abs = positive(i["abs"], "integration.abs");
      if (i["max_steps"]) cfg.integration.max_steps = integer(i["max_steps"], "integration.max_steps", 1, 100000000);
    }
    if (const YAML::Node g = root["geodesics"]) {
      allow_keys(g, "geodesics", {"origin", "headings", "t_end", "sample_dt"});
      if (g["origin"]) cfg.fan.origin = point(g["origin"], "geodesics.origin");
      if (g["headings"]) cfg.fan.headings = integer(g["headings"], "geodesics.headings", 1, 100000);
      if (g["t_end"]) cfg.fan.t_end = positive(g["t_end"], "geodesics.t_end");
      if (g["sample_dt"]) cfg.fan.sample_dt = positive(g["sample_dt"], "geodesics.sample_dt");
    }
    if (const YAML::Node n = root["indicatrix"]) {
      allow_keys(n, "indicatrix", {"base", "headings", "horizons"});
      if (n["base"]) cfg.indicatrix.base = point(n["base"], "indicatrix.base");
      if (n["headings"]) cfg.indicatrix.headings = integer(n["headings"], "indicatrix.headings", 8, 100000);
      if (const YAML::Node h = n["horizons"]) {
        if (!h.IsSequence() || h.size() == 0) throw error_at(h, "indicatrix.horizons must be a nonempty list");
        cfg.indicatrix.horizons.clear();
        for (const auto& t : h) cfg.indicatrix.horizons.push_back(positive(t, "indicatrix.horizons"));
      }
    }
    if (const YAML::Node k = root["compare"]) {
      allow_keys(k, "compare", {"tolerance", "horizon", "scan", "pairs"});
      if (k["tolerance"]) cfg.compare.tolerance = positive(k["tolerance"], "compare.tolerance");
      if (k["horizon"]) cfg.compare.horizon = positive(k["horizon"], "compare.horizon");
      if (k["scan"]) cfg.compare.scan = integer(k["scan"], "compare.scan", 4, 100000);
      const YAML::Node pairs = require(k, "pairs", "compare");
      if (!pairs.IsSequence() || pairs.size() == 0) throw error_at(pairs, "compare.pairs must be a nonempty list");
      for (const auto& p : pairs) {
        if (!p.IsSequence() || p.size() != 4) throw error_at(p, "compare pair must be [x0, y0, x1, y1]");
        cfg.compare.pairs.push_back({{number(p[0], "pair"), number(p[1], "pair")},
                                     {number(p[2], "pair"), number(p[3], "pair")}});
      }
    }
  } catch (const YAML::Exception& e) {
    throw ParseError(source + ": " + e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open configuration " + path.string(), 0, 0);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

}  // namespace zermelo::io
