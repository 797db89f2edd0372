#pragma once

// Command-line dispatch. The report goes to `out` as a single JSON document
// (or an aligned table for `bounds --format text`); diagnostics go to `err`.
// Exit codes: 0 success, 2 input error, 1 internal invariant violation.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "l1p/constants.hpp"
#include "l1p/cuts.hpp"
#include "l1p/error.hpp"
#include "l1p/fieldcheck.hpp"
#include "l1p/geometry.hpp"
#include "l1p/interval.hpp"
#include "l1p/io.hpp"
#include "l1p/report.hpp"

namespace l1p::cli {

using nlohmann::json;

// Overrides the default Monte Carlo sample count when --samples is absent.
inline constexpr const char* kSamplesEnv = "L1P_SAMPLES";

namespace detail {

inline std::size_t default_samples() {
  if (const char* env = std::getenv(kSamplesEnv)) {
    const double v = io::detail::parse_double(env);
    if (v < 100) throw Error(ErrorCode::invalid_argument, std::string(kSamplesEnv) + " must be at least 100");
    return static_cast<std::size_t>(v);
  }
  return 100000;
}

inline geometry::SamplingMethod parse_method(const std::string& s) {
  if (s == "auto") return geometry::SamplingMethod::automatic;
  if (s == "rejection") return geometry::SamplingMethod::rejection;
  if (s == "hitrun" || s == "hit_and_run") return geometry::SamplingMethod::hit_and_run;
  throw Error(ErrorCode::invalid_argument, "unknown sampling method '" + s + "'");
}

inline std::vector<constants::Exponent> parse_exponents(const std::string& s) {
  std::vector<constants::Exponent> out;
  for (const auto& part : io::detail::split(s, ',')) {
    if (part == "inf" || part == "infinity") out.push_back(constants::Exponent::infinity());
    else out.push_back(constants::Exponent::finite(io::detail::parse_double(part)));
  }
  return out;
}

struct Common {
  std::string body;
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0;
  std::string method = "auto";
  std::size_t burn_in = 1000;

  geometry::EstimatorConfig config() const {
    geometry::EstimatorConfig cfg;
    cfg.sample_count = samples ? *samples : default_samples();
    cfg.seed = seed;
    cfg.method = parse_method(method);
    cfg.burn_in = burn_in;
    cfg.validate();
    return cfg;
  }

  json echo(const geometry::ConvexBody& b, const geometry::EstimatorConfig& cfg) const {
    return json{{"body", body},
                {"body_spec", io::body_to_json(b)},
                {"samples", cfg.sample_count},
                {"method", geometry::to_string(geometry::resolve_method(b, cfg.method))},
                {"burn_in", cfg.burn_in}};
  }
};

inline void add_common(CLI::App* sub, Common& c, bool with_body = true) {
  if (with_body) sub->add_option("body", c.body, "body file or shorthand (simplex:n, ball:n:r, box:w1,w2,...)")->required();
  sub->add_option("--samples", c.samples, "Monte Carlo sample count");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--method", c.method, "sampling method: auto | rejection | hitrun");
  sub->add_option("--burn-in", c.burn_in, "hit-and-run burn-in steps");
}

inline geometry::WarningSink warn_to(std::ostream& err) {
  return [&err](std::string_view msg) { err << "warning: " << msg << '\n'; };
}

inline std::string bounds_table(const constants::CompareReport& rep) {
  std::ostringstream os;
  os << std::left << std::setw(6) << "p" << std::right << std::setw(14) << "acosta_duran" << std::setw(14)
     << "kls_thm1" << std::setw(14) << "interpolated" << std::setw(14) << "best_upper" << std::setw(26)
     << "cianchi_bracket" << '\n';
  os << std::setprecision(6) << std::fixed;
  for (const auto& row : rep.rows) {
    os << std::left << std::setw(6) << row.p.label() << std::right << std::setw(14) << row.acosta_duran
       << std::setw(14) << row.kls_theorem1 << std::setw(14) << row.interpolated << std::setw(14) << row.best_upper;
    if (row.cianchi_bracket) {
      std::ostringstream b;
      b << std::setprecision(6) << std::fixed << "[" << row.cianchi_bracket->lower << ", "
        << row.cianchi_bracket->upper << "]";
      os << std::setw(26) << b.str();
    } else {
      os << std::setw(26) << "-";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace detail

// Runs one command. `args` excludes the program name.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"Sharp L1 Poincare constants and hyperplane cut bounds for convex bodies", "l1p"};
  app.require_subcommand(1);

  detail::Common geo_opts, bounds_opts, cuts_opts;
  auto* geo = app.add_subcommand("geometry", "diameter, centroid, volume and mean distance to the centroid");
  detail::add_common(geo, geo_opts);

  auto* bnd = app.add_subcommand("bounds", "Poincare constant bounds per exponent p");
  detail::add_common(bnd, bounds_opts);
  std::string p_list = "1,2,inf", format = "json";
  bnd->add_option("--p", p_list, "comma-separated exponents, inf allowed");
  bnd->add_option("--format", format, "json | text");

  auto* cut = app.add_subcommand("cuts", "evaluate a hyperplane cut or search for the best one");
  detail::add_common(cut, cuts_opts);
  std::string cut_spec, cuts_csv;
  bool search = false;
  int directions = -1, offsets = -1;
  cut->add_option("--cut", cut_spec, "n1,...,nk,offset");
  cut->add_flag("--search", search, "search for the quotient-maximizing hyperplane");
  cut->add_option("--directions", directions, "search directions (angular in 2D, random otherwise)");
  cut->add_option("--offsets", offsets, "offsets per direction");
  cut->add_option("--csv", cuts_csv, "write the search grid as CSV");

  auto* itv = app.add_subcommand("interval", "sharp weighted L1 Poincare constants on [0, 1]");
  std::string weight, mode = "dirichlet", oracle, interval_csv;
  double eps = interval::kDefaultEpsilon;
  itv->add_option("--weight", weight, "const:c | exp:a | gauss:s | file:<path>")->required();
  itv->add_option("--mode", mode, "dirichlet | meanzero");
  itv->add_option("--eps", eps, "near-extremizer tolerance in (0, 1)");
  itv->add_option("--oracle", oracle, "n_points,trials,seed for the brute-force oracle");
  itv->add_option("--csv", interval_csv, "write (x, objective, is_in_A) as CSV");

  auto* ver = app.add_subcommand("verify", "numerical verification harnesses");
  ver->require_subcommand(1);
  auto* sharp = ver->add_subcommand("sharpness", "mollified step fields on thin rectangles");
  std::string sweep_eps = "0.2,0.1,0.05,0.01", sweep_widths, sweep_csv;
  std::size_t grid = 2048;
  sharp->add_option("--eps", sweep_eps, "rectangle thicknesses");
  sharp->add_option("--widths", sweep_widths, "mollification widths (default: width = eps)");
  sharp->add_option("--grid", grid, "cells along the long side");
  sharp->add_option("--csv", sweep_csv, "write (eps, width, ratio) as CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    json report{{"schema", report::kSchema}, {"version", report::kVersion}};
    json inputs, results;
    std::uint64_t seed = 0;
    std::optional<std::string> text_output;

    if (geo->parsed()) {
      report["command"] = "geometry";
      const auto body = io::parse_body(geo_opts.body, detail::warn_to(err));
      const auto cfg = geo_opts.config();
      seed = cfg.seed;
      inputs = geo_opts.echo(body, cfg);
      results = report::to_json(geometry::summarize(body, cfg));
    } else if (bnd->parsed()) {
      report["command"] = "bounds";
      const auto body = io::parse_body(bounds_opts.body, detail::warn_to(err));
      const auto cfg = bounds_opts.config();
      const auto ps = detail::parse_exponents(p_list);
      if (format != "json" && format != "text") throw Error(ErrorCode::invalid_argument, "format must be json or text");
      seed = cfg.seed;
      inputs = bounds_opts.echo(body, cfg);
      inputs["p"] = p_list;
      cuts::SearchConfig sc;
      sc.estimator = cfg;
      const auto rep = constants::compare_report(body, ps, sc);
      json rows = json::array();
      for (const auto& row : rep.rows) rows.push_back(report::to_json(row));
      results = json{{"geometry", report::to_json(rep.summary)},
                     {"certified_mean_dist", json{{"value", rep.mean.value}, {"source", rep.mean.source}}},
                     {"rows", rows}};
      if (format == "text") text_output = detail::bounds_table(rep);
    } else if (cut->parsed()) {
      report["command"] = "cuts";
      const auto body = io::parse_body(cuts_opts.body, detail::warn_to(err));
      const auto cfg = cuts_opts.config();
      seed = cfg.seed;
      inputs = cuts_opts.echo(body, cfg);
      if (cut_spec.empty() && !search) throw Error(ErrorCode::invalid_argument, "give --cut and/or --search");
      if (!cut_spec.empty()) {
        const auto v = io::parse_list(cut_spec);
        if (v.size() != body.dimension() + 1)
          throw Error(ErrorCode::dimension_mismatch, "--cut needs " + std::to_string(body.dimension()) +
                                                         " normal components and an offset");
        const auto hc = cuts::normalized_cut(Point(v.begin(), v.end() - 1), v.back());
        inputs["cut"] = cut_spec;
        const auto e = cuts::evaluate_cut(body, hc, cfg);
        const double diam = geometry::diameter(body);
        const double total = e.vol_S + e.vol_comp;
        results["cut"] = json{{"cut", report::to_json(hc)},
                              {"evaluation", report::to_json(e)},
                              {"quotient", report::measured(cuts::quotient(e), cuts::quotient_stderr(e))},
                              {"rewrite_identity", cuts::rewrite_identity_check(e, diam, total)},
                              {"bounds", report::to_json(cuts::cut_report(e, diam, total))}};
      }
      if (search) {
        cuts::SearchConfig sc;
        sc.estimator = cfg;
        sc.keep_grid = !cuts_csv.empty();
        if (directions > 0) sc.angular_directions = sc.random_directions = directions;
        if (offsets > 0) sc.planar_offsets = sc.offsets = offsets;
        inputs["search"] = json{{"directions", body.dimension() <= 2 ? sc.angular_directions : sc.random_directions},
                                {"offsets", body.dimension() <= 2 ? sc.planar_offsets : sc.offsets}};
        const auto r = cuts::search_max_quotient(body, sc);
        results["search"] = report::to_json(r);
        if (!cuts_csv.empty()) {
          std::vector<std::vector<double>> rows;
          rows.reserve(r.grid.size());
          for (const auto& g : r.grid) rows.push_back({g.direction, g.offset, g.quotient});
          report::emit_plot_data(cuts_csv, {r.planar_grid ? "angle" : "direction", "offset", "quotient"}, rows);
        }
      }
    } else if (itv->parsed()) {
      report["command"] = "interval";
      const auto w = io::parse_weight(weight);
      interval::Mode m;
      if (mode == "dirichlet") m = interval::Mode::dirichlet;
      else if (mode == "meanzero" || mode == "mean_zero") m = interval::Mode::mean_zero;
      else throw Error(ErrorCode::invalid_argument, "mode must be dirichlet or meanzero");
      inputs = json{{"weight", weight}, {"weight_spec", w.describe()}, {"mode", interval::to_string(m)}, {"eps", eps}};
      const auto r = interval::sharp_constant(w, m, eps);
      results = report::to_json(r);
      if (!oracle.empty()) {
        const auto parts = io::detail::split(oracle, ',');
        if (parts.size() != 3) throw Error(ErrorCode::invalid_argument, "--oracle expects n,trials,seed");
        const int n = io::detail::parse_int(parts[0]), trials = io::detail::parse_int(parts[1]);
        if (n < 0 || trials < 0) throw Error(ErrorCode::invalid_argument, "--oracle values must be nonnegative");
        seed = static_cast<std::uint64_t>(io::detail::parse_double(parts[2]));
        inputs["oracle"] = json{{"n_points", n}, {"trials", trials}, {"seed", seed}};
        const auto o = interval::oracle_max_ratio(w, m, std::size_t(n), std::size_t(trials), seed);
        results["oracle"] = report::to_json(o);
        results["oracle_relative_gap"] = (r.constant - o.max_ratio) / r.constant;
      }
      if (!interval_csv.empty()) {
        std::vector<std::vector<double>> rows;
        for (const auto& s : interval::objective_table(w, r))
          rows.push_back({s.x, s.objective, s.in_near_extremizer_set ? 1.0 : 0.0});
        report::emit_plot_data(interval_csv, {"x", "objective", "is_in_A"}, rows);
      }
    } else if (sharp->parsed()) {
      report["command"] = "verify sharpness";
      const auto eps_list = io::parse_list(sweep_eps);
      const auto widths = sweep_widths.empty() ? std::vector<double>{} : io::parse_list(sweep_widths);
      inputs = json{{"eps", eps_list}, {"widths", sweep_widths.empty() ? json("eps") : json(widths)}, {"grid", grid}};
      const auto rows = fieldcheck::sweep_sharpness(eps_list, widths, grid);
      json table = json::array();
      std::vector<std::vector<double>> csv;
      for (const auto& row : rows) {
        table.push_back(report::to_json(row));
        csv.push_back({row.eps, row.width, row.ratio});
        if (row.ratio > row.acosta_duran + row.slack)
          throw InvariantViolation("measured ratio exceeds diam/2 plus discretization slack");
      }
      results = json{{"rows", table}};
      if (!sweep_csv.empty()) report::emit_plot_data(sweep_csv, {"eps", "width", "ratio"}, csv);
    }

    report["seed"] = seed;
    report["inputs"] = inputs;
    report["results"] = results;
    report["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (text_output) out << *text_output;
    else out << report.dump(2) << '\n';
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace l1p::cli
