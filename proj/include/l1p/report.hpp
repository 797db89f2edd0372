#pragma once

// JSON payloads for run reports. Every measured number is written as
// {"value": v, "uncertainty": s}, with s = 0 on exact paths.

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "l1p/constants.hpp"
#include "l1p/cuts.hpp"
#include "l1p/error.hpp"
#include "l1p/fieldcheck.hpp"
#include "l1p/geometry.hpp"
#include "l1p/interval.hpp"

namespace l1p::report {

using nlohmann::json;

inline constexpr const char* kSchema = "l1p-report/1";
inline constexpr const char* kVersion = "1.0.0";

inline json measured(double value, double uncertainty = 0.0) {
  return json{{"value", value}, {"uncertainty", uncertainty}};
}

inline json measured(const geometry::Measured& m) {
  return json{{"value", m.value}, {"uncertainty", m.std_error}, {"exact", m.exact}};
}

inline json to_json(const geometry::GeometrySummary& s) {
  json j{{"diameter", measured(s.diameter)},
         {"centroid", s.centroid},
         {"centroid_uncertainty", s.centroid_std_error},
         {"centroid_exact", s.centroid_exact},
         {"volume", measured(s.volume)},
         {"mean_dist_to_centroid", measured(s.mean_dist_to_centroid)},
         {"second_moment_root", measured(s.second_moment_root)}};
  if (s.simplex_second_moment_bound) j["simplex_second_moment_bound"] = measured(*s.simplex_second_moment_bound);
  return j;
}

inline json to_json(const cuts::HyperplaneCut& c) { return json{{"normal", c.normal}, {"offset", c.offset}}; }

inline json to_json(const cuts::CutEvaluation& e) {
  return json{{"vol_S", measured(e.vol_S, e.vol_stderr)},
              {"vol_comp", measured(e.vol_comp, e.vol_stderr)},
              {"cut_area", measured(e.cut_area, e.area_stderr)},
              {"method", cuts::to_string(e.method)}};
}

inline json to_json(const cuts::BoundEntry& b) {
  json j{{"bound_name", b.name},
         {"kind", b.kind == cuts::BoundKind::lower ? "lower_bound_on_area" : "upper_bound_on_quotient"},
         {"bound", measured(b.bound, b.bound_stderr)},
         {"attained", measured(b.attained, b.attained_stderr)},
         {"unbounded", !b.margin.has_value()}};
  j["margin"] = b.margin ? json(*b.margin) : json(nullptr);
  return j;
}

inline json to_json(const cuts::CutBoundReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) entries.push_back(to_json(e));
  return entries;
}

inline json to_json(const cuts::SearchResult& r) {
  return json{{"cut", to_json(r.cut)},
              {"evaluation", to_json(r.evaluation)},
              {"quotient", measured(r.quotient, r.quotient_stderr)},
              {"diameter", measured(r.diameter)},
              {"volume", measured(r.volume)},
              {"mean_dist_to_centroid", measured(r.mean_dist)},
              {"bounds", to_json(r.report)}};
}

inline json to_json(const constants::Bracket& b) {
  return json{{"lower", measured(b.lower, b.lower_stderr)}, {"upper", measured(b.upper)}};
}

inline json to_json(const constants::PoincareBoundSet& row) {
  json refs = json::array();
  for (const auto& r : row.reference_constants)
    refs.push_back(json{{"name", r.name}, {"value", r.value ? json(*r.value) : json(nullptr)}});
  json j{{"p", row.p.label()},
         {"acosta_duran", measured(row.acosta_duran)},
         {"kls_theorem1", measured(row.kls_theorem1)},
         {"interpolated", measured(row.interpolated)},
         {"best_upper", measured(row.best_upper)},
         {"best_upper_source", row.best_upper_source},
         {"reference_constants", refs}};
  j["cianchi_bracket"] = row.cianchi_bracket ? to_json(*row.cianchi_bracket) : json(nullptr);
  return j;
}

inline json to_json(const interval::SharpConstantResult& r) {
  json set = json::array();
  for (const auto& iv : r.near_extremizer_set) set.push_back(json::array({iv.lo, iv.hi}));
  return json{{"constant", measured(r.constant)},
              {"argmax_x", measured(r.argmax_x)},
              {"mode", interval::to_string(r.mode)},
              {"epsilon", r.epsilon},
              {"near_extremizer_set", set}};
}

inline json to_json(const interval::OracleResult& o) {
  return json{{"max_ratio", measured(o.max_ratio)},
              {"single_step_max", measured(o.step_max)},
              {"staircase_max", measured(o.staircase_max)},
              {"smooth_max", measured(o.smooth_max)},
              {"functions_tested", o.functions_tested}};
}

inline json to_json(const fieldcheck::SweepRow& r) {
  return json{{"eps", r.eps},
              {"width", r.width},
              {"ratio", measured(r.ratio)},
              {"diameter", measured(r.diameter)},
              {"acosta_duran", measured(r.acosta_duran)},
              {"slack", r.slack},
              {"grid", json::array({r.nx, r.ny})}};
}

// CSV with a fixed header; an unwritable path is an input error.
inline void emit_plot_data(const std::string& path, const std::vector<std::string>& header,
                           const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write '" + path + "'");
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  out.precision(17);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::invalid_argument, "failed writing '" + path + "'");
}

}  // namespace l1p::report
