#pragma once

// Text inputs: body specification files and shorthands, weight specifiers.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "l1p/error.hpp"
#include "l1p/geometry.hpp"
#include "l1p/interval.hpp"

namespace l1p::io {

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_argument, "not a number: '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorCode::invalid_argument, "not a number: '" + s + "'");
  return v;
}

inline int parse_int(const std::string& s) {
  const double v = parse_double(s);
  if (v != static_cast<double>(static_cast<int>(v))) throw Error(ErrorCode::invalid_argument, "not an integer: '" + s + "'");
  return static_cast<int>(v);
}

inline Point point_from(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array()) throw Error(ErrorCode::invalid_argument, std::string("missing array field '") + field + "'");
  Point p;
  for (const auto& x : j[field]) {
    if (!x.is_number()) throw Error(ErrorCode::invalid_argument, std::string("non-numeric entry in '") + field + "'");
    p.push_back(x.get<double>());
  }
  return p;
}

}  // namespace detail

inline std::vector<double> parse_list(std::string_view s) {
  std::vector<double> out;
  for (const auto& part : detail::split(s, ',')) out.push_back(detail::parse_double(part));
  return out;
}

inline geometry::ConvexBody body_from_json(const nlohmann::json& j, const geometry::WarningSink& warn = {}) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw Error(ErrorCode::invalid_argument, "body specification needs a string 'type'");
  const std::string type = j["type"];
  if (type == "ball") {
    if (!j.contains("radius") || !j["radius"].is_number()) throw Error(ErrorCode::invalid_argument, "ball needs 'radius'");
    return geometry::ConvexBody::ball(detail::point_from(j, "center"), j["radius"].get<double>());
  }
  if (type == "box") return geometry::ConvexBody::box(detail::point_from(j, "lower"), detail::point_from(j, "upper"));
  if (type == "simplex") {
    if (!j.contains("dimension") || !j["dimension"].is_number_integer())
      throw Error(ErrorCode::invalid_argument, "simplex needs integer 'dimension'");
    return geometry::ConvexBody::regular_simplex(j["dimension"].get<int>());
  }
  if (type == "polytope") {
    if (!j.contains("vertices") || !j["vertices"].is_array())
      throw Error(ErrorCode::invalid_argument, "polytope needs 'vertices'");
    std::vector<Point> vs;
    for (const auto& v : j["vertices"]) {
      if (!v.is_array()) throw Error(ErrorCode::invalid_argument, "vertex must be an array");
      Point p;
      for (const auto& x : v) {
        if (!x.is_number()) throw Error(ErrorCode::invalid_argument, "non-numeric vertex coordinate");
        p.push_back(x.get<double>());
      }
      vs.push_back(std::move(p));
    }
    return geometry::ConvexBody::polytope(std::move(vs), warn);
  }
  throw Error(ErrorCode::invalid_argument, "unknown body type '" + type + "'");
}

inline nlohmann::json body_to_json(const geometry::ConvexBody& body) {
  using nlohmann::json;
  if (const auto* b = body.as<geometry::Ball>()) return json{{"type", "ball"}, {"center", b->center}, {"radius", b->radius}};
  if (const auto* b = body.as<geometry::Box>()) return json{{"type", "box"}, {"lower", b->lower}, {"upper", b->upper}};
  if (const auto* s = body.as<geometry::RegularSimplex>()) return json{{"type", "simplex"}, {"dimension", s->dimension}};
  return json{{"type", "polytope"}, {"vertices", body.as<geometry::VPolytope>()->vertices}};
}

// Shorthands: simplex:n, ball:n:r (centered at the origin), box:w1,w2,...
// (from the origin). Anything else is read as a JSON body file.
inline geometry::ConvexBody parse_body(const std::string& arg, const geometry::WarningSink& warn = {}) {
  const auto colon = arg.find(':');
  const std::string head = arg.substr(0, colon);
  if (colon != std::string::npos && !std::filesystem::exists(arg)) {
    const std::string rest = arg.substr(colon + 1);
    if (head == "simplex") return geometry::ConvexBody::regular_simplex(detail::parse_int(rest));
    if (head == "ball") {
      const auto parts = detail::split(rest, ':');
      if (parts.size() != 2) throw Error(ErrorCode::invalid_argument, "ball shorthand is ball:n:r");
      const int n = detail::parse_int(parts[0]);
      if (n < 1) throw Error(ErrorCode::invalid_dimension, "ball dimension must be >= 1");
      return geometry::ConvexBody::ball(Point(static_cast<std::size_t>(n), 0.0), detail::parse_double(parts[1]));
    }
    if (head == "box") {
      const Point upper = parse_list(rest);
      return geometry::ConvexBody::box(Point(upper.size(), 0.0), upper);
    }
  }
  std::ifstream in(arg);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot read body file '" + arg + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_argument, "malformed body file '" + arg + "': " + e.what());
  }
  return body_from_json(j, warn);
}

// const:c | exp:a | gauss:s | file:<path> with two columns (x, nu(x)).
inline interval::WeightSpec parse_weight(const std::string& arg) {
  const auto colon = arg.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::invalid_argument, "weight must look like kind:value");
  const std::string kind = arg.substr(0, colon), rest = arg.substr(colon + 1);
  if (kind == "const") return interval::WeightSpec::constant(detail::parse_double(rest));
  if (kind == "exp") return interval::WeightSpec::exponential(detail::parse_double(rest));
  if (kind == "gauss") return interval::WeightSpec::gaussian(detail::parse_double(rest));
  if (kind == "file") {
    std::ifstream in(rest);
    if (!in) throw Error(ErrorCode::invalid_argument, "cannot read weight file '" + rest + "'");
    std::vector<double> xs, vs;
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      double x = 0.0, v = 0.0;
      if (!(ls >> x)) continue;
      if (!(ls >> v)) throw Error(ErrorCode::invalid_argument, "weight file rows need two columns");
      xs.push_back(x);
      vs.push_back(v);
    }
    return interval::WeightSpec::tabulated(std::move(xs), std::move(vs));
  }
  throw Error(ErrorCode::invalid_argument, "unknown weight kind '" + kind + "'");
}

}  // namespace l1p::io
