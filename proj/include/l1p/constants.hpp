#pragma once

// Upper bounds on the mean-zero Poincare constant of a convex body,
// ||u - mean u||_p <= C ||grad u||_p, and the bracket on the sharp L^1
// constant given by hyperplane cuts.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "l1p/cuts.hpp"
#include "l1p/error.hpp"
#include "l1p/geometry.hpp"

namespace l1p::constants {

using geometry::ConvexBody;

// Exponent p in [1, inf]; infinity is symbolic.
class Exponent {
 public:
  static Exponent finite(double p) {
    if (!(p >= 1.0) || !std::isfinite(p))
      throw Error(ErrorCode::invalid_argument, "exponent p must satisfy 1 <= p < inf");
    return Exponent(false, p);
  }
  static Exponent infinity() { return Exponent(true, std::numeric_limits<double>::infinity()); }

  bool is_infinite() const { return infinite_; }
  double value() const { return value_; }
  // 1/p, exactly 0 at infinity
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }

  std::string label() const {
    if (infinite_) return "inf";
    std::string s = std::to_string(value_);
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    return s;
  }

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  Exponent(bool inf, double v) : infinite_(inf), value_(v) {}
  bool infinite_;
  double value_;
};

inline double acosta_duran_constant(double diam) {
  if (!(diam > 0.0)) throw Error(ErrorCode::invalid_argument, "diameter must be positive");
  return diam / 2.0;
}

// (2 / log 2) M
inline double kls_theorem1_constant(double mean_dist) {
  if (!(mean_dist > 0.0)) throw Error(ErrorCode::invalid_argument, "mean distance must be positive");
  return 2.0 / std::numbers::ln2 * mean_dist;
}

// ((2 / log 2) M)^(1/p) diam^(1 - 1/p); the p = 1 and p = inf endpoints are
// returned without going through pow so they match the base bounds exactly.
inline double interpolated_constant(double mean_dist, double diam, Exponent p) {
  if (!(diam > 0.0)) throw Error(ErrorCode::invalid_argument, "diameter must be positive");
  const double kls = kls_theorem1_constant(mean_dist);
  if (p.is_infinite()) return diam;
  if (p.value() == 1.0) return kls;
  const double s = p.reciprocal();
  return std::pow(kls, s) * std::pow(diam, 1.0 - s);
}

// Mean distance usable inside a certified upper bound: exact for segments,
// the closed-form second moment for regular simplices, M + 3 sigma otherwise.
struct CertifiedMean {
  double value = 0.0;
  std::string source;
};

inline CertifiedMean certified_mean(const geometry::GeometrySummary& s) {
  if (s.mean_dist_to_centroid.exact) return {s.mean_dist_to_centroid.value, "exact"};
  if (s.simplex_second_moment_bound) return {*s.simplex_second_moment_bound, "simplex_second_moment"};
  return {s.mean_dist_to_centroid.value + 3.0 * s.mean_dist_to_centroid.std_error, "monte_carlo_3sigma"};
}

struct Bracket {
  double lower = 0.0;
  double lower_stderr = 0.0;
  double upper = 0.0;
};

inline Bracket bracket_from(const cuts::SearchResult& search, const CertifiedMean& m) {
  const double vol = search.volume.value;
  Bracket b;
  b.lower = 2.0 * search.quotient / vol;
  b.lower_stderr = 2.0 * std::hypot(search.quotient_stderr / vol,
                                    search.quotient * search.volume.std_error / (vol * vol));
  b.upper = std::min(acosta_duran_constant(search.diameter), kls_theorem1_constant(m.value));
  return b;
}

// lower = best hyperplane value of 2 |S||S^c| / (area |body|); upper = the
// smaller of diam/2 and the certified mean-distance bound.
inline Bracket cianchi_bracket(const ConvexBody& body, const cuts::SearchConfig& sc) {
  const auto search = cuts::search_max_quotient(body, sc);
  const auto summary = geometry::summarize(body, sc.estimator);
  return bracket_from(search, certified_mean(summary));
}

struct ReferenceConstant {
  std::string name;
  std::optional<double> value;  // empty: named only
};

struct PoincareBoundSet {
  Exponent p = Exponent::finite(1.0);
  double acosta_duran = 0.0;
  double kls_theorem1 = 0.0;
  double interpolated = 0.0;
  std::optional<Bracket> cianchi_bracket;  // p = 1 only
  double best_upper = 0.0;
  std::string best_upper_source;
  std::vector<ReferenceConstant> reference_constants;
};

struct CompareReport {
  geometry::GeometrySummary summary;
  CertifiedMean mean;
  std::optional<cuts::SearchResult> search;
  std::vector<PoincareBoundSet> rows;
};

inline std::vector<ReferenceConstant> reference_constants(Exponent p, double diam) {
  std::vector<ReferenceConstant> out;
  if (p.is_infinite()) return out;
  if (p.value() == 1.0) out.push_back({"acosta_duran_sharp_diam_over_2", diam / 2.0});
  if (p.value() == 2.0) out.push_back({"payne_weinberger_diam_over_pi", diam / std::numbers::pi});
  if (p.value() > 1.0 && p.value() < 2.0) {
    out.push_back({"valtorta", std::nullopt});
    out.push_back({"ferone_nitsch_trombetti", std::nullopt});
  }
  return out;
}

inline CompareReport compare_report(const ConvexBody& body, const std::vector<Exponent>& ps,
                                    const cuts::SearchConfig& sc) {
  CompareReport rep;
  rep.summary = geometry::summarize(body, sc.estimator);
  rep.mean = certified_mean(rep.summary);
  const double diam = rep.summary.diameter;
  const bool need_bracket = std::any_of(ps.begin(), ps.end(), [](Exponent p) {
    return !p.is_infinite() && p.value() == 1.0;
  });
  if (need_bracket) rep.search = cuts::search_max_quotient(body, sc);

  for (Exponent p : ps) {
    PoincareBoundSet row;
    row.p = p;
    row.acosta_duran = acosta_duran_constant(diam);
    row.kls_theorem1 = kls_theorem1_constant(rep.mean.value);
    row.interpolated = interpolated_constant(rep.mean.value, diam, p);
    row.reference_constants = reference_constants(p, diam);
    if (!p.is_infinite() && p.value() == 1.0) {
      row.cianchi_bracket = bracket_from(*rep.search, rep.mean);
      if (row.kls_theorem1 < row.acosta_duran) {
        row.best_upper = row.kls_theorem1;
        row.best_upper_source = "kls_theorem1";
      } else {
        row.best_upper = row.acosta_duran;
        row.best_upper_source = "acosta_duran";
      }
    } else {
      row.best_upper = row.interpolated;
      row.best_upper_source = p.is_infinite() ? "diameter" : "interpolated";
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace l1p::constants
