#pragma once

// Hyperplane cuts of convex bodies: exact and Monte Carlo evaluation of
// (|S|, |body \ S|, area of the cut), the lower-bound inequalities on the cut
// area, and a coarse-to-fine search for the cut maximizing
// |S| |body \ S| / area.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "l1p/error.hpp"
#include "l1p/geometry.hpp"
#include "l1p/golden.hpp"
#include "l1p/polygon.hpp"
#include "l1p/random.hpp"
#include "l1p/vec.hpp"

namespace l1p::cuts {

using geometry::ConvexBody;
using geometry::EstimatorConfig;

// {x : <normal, x> = offset}; S is the open side <normal, x> < offset.
struct HyperplaneCut {
  Point normal;
  double offset = 0.0;
};

inline HyperplaneCut make_cut(Point normal, double offset) {
  if (normal.empty()) throw Error(ErrorCode::invalid_dimension, "cut normal has dimension 0");
  if (!vec::all_finite(normal) || !std::isfinite(offset))
    throw Error(ErrorCode::invalid_argument, "non-finite cut parameters");
  if (std::abs(vec::norm(normal) - 1.0) > 1e-12)
    throw Error(ErrorCode::invalid_argument, "cut normal must be a unit vector");
  return {std::move(normal), offset};
}

// Same hyperplane, rescaled so the normal has unit length.
inline HyperplaneCut normalized_cut(Point direction, double offset) {
  const double len = vec::norm(direction);
  if (!(len > 0.0) || !std::isfinite(len))
    throw Error(ErrorCode::invalid_argument, "cut direction must be a nonzero finite vector");
  for (double& x : direction) x /= len;
  return make_cut(std::move(direction), offset / len);
}

enum class EvalMethod { exact, monte_carlo };

inline const char* to_string(EvalMethod m) { return m == EvalMethod::exact ? "exact" : "monte_carlo"; }

struct CutEvaluation {
  double vol_S = 0.0;
  double vol_comp = 0.0;
  double cut_area = 0.0;
  EvalMethod method = EvalMethod::exact;
  double vol_stderr = 0.0;
  double area_stderr = 0.0;
};

struct CutOptions {
  bool force_monte_carlo = false;
};

namespace detail {

inline constexpr std::uint64_t kPatchStream = 3ULL << 32;
inline constexpr std::uint64_t kSearchStream = 5ULL << 32;
// Above this dimension the cut area comes from a thin slab of body samples
// instead of sampling the hyperplane patch.
inline constexpr std::size_t kPatchMaxDimension = 6;

inline void require_both_sides(const ConvexBody& body, const HyperplaneCut& cut) {
  const auto [lo, hi] = body.support(cut.normal);
  const double tol = 1e-12 * std::max(1.0, hi - lo);
  if (!(cut.offset > lo + tol && cut.offset < hi - tol))
    throw Error(ErrorCode::empty_side, "cut does not split the body into two nonempty sides");
}

// Volume of {<u, x - c> < t} for the ball |x - c| <= r in R^n, u a unit vector.
inline double ball_side_volume(std::size_t n, double r, double t) {
  const double total = geometry::detail::unit_ball_volume(n) * std::pow(r, double(n));
  const double x = std::clamp(1.0 - (t * t) / (r * r), 0.0, 1.0);
  const double cap = 0.5 * total * boost::math::ibeta(0.5 * (double(n) + 1.0), 0.5, x);
  return t >= 0.0 ? total - cap : cap;
}

inline double ball_section_area(std::size_t n, double r, double t) {
  const double rho2 = std::max(0.0, r * r - t * t);
  return geometry::detail::unit_ball_volume(n - 1) * std::pow(rho2, 0.5 * (double(n) - 1.0));
}

inline std::optional<CutEvaluation> evaluate_exact(const ConvexBody& body, const HyperplaneCut& cut) {
  const std::size_t n = body.dimension();
  if (n == 1) {
    const auto [a, b] = body.segment();
    const double s = cut.normal[0] > 0 ? 1.0 : -1.0;
    const double x = s * cut.offset;  // cut point
    const double left = x - a, right = b - x;
    return CutEvaluation{s > 0 ? left : right, s > 0 ? right : left, 1.0};
  }
  if (const auto* ball = body.as<geometry::Ball>()) {
    const double t = cut.offset - vec::dot(cut.normal, ball->center);
    const double total = geometry::detail::unit_ball_volume(n) * std::pow(ball->radius, double(n));
    const double vs = ball_side_volume(n, ball->radius, t);
    return CutEvaluation{vs, total - vs, ball_section_area(n, ball->radius, t)};
  }
  if (const auto& poly = body.planar_polygon()) {
    const polygon::Vec2 u{cut.normal[0], cut.normal[1]};
    const double vs = polygon::area(polygon::clip_below(*poly, u, cut.offset));
    const double vc = polygon::area(polygon::clip_below(*poly, {-u.x, -u.y}, -cut.offset));
    return CutEvaluation{vs, vc, polygon::chord_length(*poly, u, cut.offset)};
  }
  if (const auto* box = body.as<geometry::Box>()) {
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(std::abs(cut.normal[k]) - 1.0) > 1e-12) continue;
      const double s = cut.normal[k] > 0 ? 1.0 : -1.0;
      double face = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) face *= box->upper[j] - box->lower[j];
      const double x = s * cut.offset;
      const double left = (x - box->lower[k]) * face, right = (box->upper[k] - x) * face;
      return CutEvaluation{s > 0 ? left : right, s > 0 ? right : left, face};
    }
  }
  return std::nullopt;
}

inline CutEvaluation evaluate_monte_carlo(const ConvexBody& body, const HyperplaneCut& cut,
                                          const EstimatorConfig& cfg) {
  const std::size_t n = body.dimension();
  const auto samples = geometry::sample_uniform(body, cfg);
  const geometry::Measured vol = geometry::volume(body, cfg);
  std::vector<double> side(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    side[i] = vec::dot(cut.normal, samples[i]) < cut.offset ? 1.0 : 0.0;
  const MeanEstimate f = batch_mean(side);

  CutEvaluation e;
  e.method = EvalMethod::monte_carlo;
  e.vol_S = vol.value * f.mean;
  e.vol_comp = vol.value * (1.0 - f.mean);
  e.vol_stderr = std::hypot(vol.value * f.std_error, std::max(f.mean, 1.0 - f.mean) * vol.std_error);

  if (n <= kPatchMaxDimension) {
    // patch: the (n-1)-cube of half-width R on the hyperplane, centered at the
    // projection of the interior point; it covers the whole section
    const Point& c = body.interior_point();
    const Point origin = vec::axpy(c, cut.offset - vec::dot(cut.normal, c), cut.normal);
    const double radius = body.enclosing_radius();
    const auto basis = vec::orthonormal_complement(cut.normal);
    Rng rng(cfg.seed, kPatchStream);
    std::size_t hits = 0;
    Point p(n);
    for (std::size_t i = 0; i < cfg.sample_count; ++i) {
      p = origin;
      for (const Point& b : basis) {
        const double s = rng.uniform(-radius, radius);
        for (std::size_t k = 0; k < n; ++k) p[k] += s * b[k];
      }
      if (geometry::contains(body, p)) ++hits;
    }
    const double patch = std::pow(2.0 * radius, double(n) - 1.0);
    const double q = static_cast<double>(hits) / static_cast<double>(cfg.sample_count);
    e.cut_area = patch * q;
    e.area_stderr = patch * std::sqrt(q * (1.0 - q) / static_cast<double>(cfg.sample_count));
  } else {
    // d/dt |{<u,x> < t}| as the mass of a slab of width h around the plane
    const auto [lo, hi] = body.support(cut.normal);
    const double h = 0.02 * (hi - lo);
    std::vector<double> slab(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
      slab[i] = std::abs(vec::dot(cut.normal, samples[i]) - cut.offset) < 0.5 * h ? 1.0 : 0.0;
    const MeanEstimate s = batch_mean(slab);
    e.cut_area = vol.value * s.mean / h;
    e.area_stderr = vol.value * s.std_error / h;
  }
  return e;
}

}  // namespace detail

// Exact for segments, balls (any normal), planar polygons and boxes with an
// axis-aligned normal; Monte Carlo otherwise.
inline CutEvaluation evaluate_cut(const ConvexBody& body, const HyperplaneCut& cut,
                                  const EstimatorConfig& cfg = {}, const CutOptions& opts = {}) {
  vec::require_same_dim(body.dimension(), cut.normal.size(), "cut normal");
  detail::require_both_sides(body, cut);
  if (!opts.force_monte_carlo)
    if (auto e = detail::evaluate_exact(body, cut)) return *e;
  cfg.validate();
  return detail::evaluate_monte_carlo(body, cut, cfg);
}

// ---------------------------------------------------------------------------
// Bound checks

enum class BoundKind { lower, upper };

// margin = attained / bound for lower bounds on the cut area and
// bound / attained for upper bounds on the quotient; both are >= 1 when the
// inequality holds. An empty margin means unbounded.
struct BoundEntry {
  std::string name;
  BoundKind kind = BoundKind::lower;
  double bound = 0.0;
  double bound_stderr = 0.0;
  double attained = 0.0;
  double attained_stderr = 0.0;
  std::optional<double> margin;
};

struct CutBoundReport {
  std::vector<BoundEntry> entries;

  const BoundEntry* find(std::string_view name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

namespace detail {

inline BoundEntry lower_entry(std::string name, double bound, const CutEvaluation& e) {
  BoundEntry out{std::move(name), BoundKind::lower, bound, 0.0, e.cut_area, e.area_stderr, {}};
  if (bound > 0.0) out.margin = e.cut_area / bound;
  return out;
}

inline BoundEntry upper_entry(std::string name, double bound, double bound_se, double attained,
                              double attained_se) {
  BoundEntry out{std::move(name), BoundKind::upper, bound, bound_se, attained, attained_se, {}};
  if (attained > 0.0) out.margin = bound / attained;
  return out;
}

}  // namespace detail

// area >= min(|S|, |S^c|) / diam
inline BoundEntry check_lovasz_simonovits(const CutEvaluation& e, double diam) {
  return detail::lower_entry("lovasz_simonovits", std::min(e.vol_S, e.vol_comp) / diam, e);
}

// area >= 2 min(|S|, |S^c|) / diam
inline BoundEntry check_dyer_frieze(const CutEvaluation& e, double diam) {
  return detail::lower_entry("dyer_frieze", 2.0 * std::min(e.vol_S, e.vol_comp) / diam, e);
}

// area >= 4 |S| |S^c| / (diam |body|)
inline BoundEntry check_product_form(const CutEvaluation& e, double diam, double total_volume) {
  if (!(total_volume > 0.0)) throw Error(ErrorCode::invalid_argument, "total volume must be positive");
  return detail::lower_entry("product_form", 4.0 * e.vol_S * e.vol_comp / (diam * total_volume), e);
}

// 4 |S||S^c| / (d |body|) == (2/d) min * (2 max / |body|), within 1e-12 relative.
inline bool rewrite_identity_check(const CutEvaluation& e, double diam, double total_volume) {
  const double lhs = 4.0 * e.vol_S * e.vol_comp / (diam * total_volume);
  const double rhs = (2.0 / diam) * std::min(e.vol_S, e.vol_comp) *
                     (2.0 * std::max(e.vol_S, e.vol_comp) / total_volume);
  return std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), std::abs(rhs));
}

// |S| |S^c| / area
inline double quotient(const CutEvaluation& e) {
  if (!(e.cut_area > 0.0)) throw Error(ErrorCode::invalid_argument, "cut area is zero");
  return e.vol_S * e.vol_comp / e.cut_area;
}

inline double quotient_stderr(const CutEvaluation& e) {
  if (e.method == EvalMethod::exact) return 0.0;
  const double q = quotient(e);
  const auto rel = [](double se, double v) { return v > 0 ? se / v : 0.0; };
  return q * std::sqrt(std::pow(rel(e.vol_stderr, e.vol_S), 2) + std::pow(rel(e.vol_stderr, e.vol_comp), 2) +
                       std::pow(rel(e.area_stderr, e.cut_area), 2));
}

// (1 - 2^-n) (n-1) / (n (n+1)) * omega_{n-1} * diam^(n+1), omega_{n-1} the
// volume of the unit (n-1)-ball.
inline double bokowski_bound(int n, double diam) {
  if (n < 2) throw Error(ErrorCode::invalid_dimension, "Bokowski's bound needs n >= 2");
  const double nd = static_cast<double>(n);
  const double omega = geometry::detail::unit_ball_volume(static_cast<std::size_t>(n - 1));
  return (1.0 - std::pow(2.0, -nd)) * (nd - 1.0) / (nd * (nd + 1.0)) * omega * std::pow(diam, nd + 1.0);
}

inline CutBoundReport cut_report(const CutEvaluation& e, double diam, double total_volume) {
  return {{check_lovasz_simonovits(e, diam), check_dyer_frieze(e, diam),
           check_product_form(e, diam, total_volume)}};
}

// ---------------------------------------------------------------------------
// Search

struct SearchConfig {
  int angular_directions = 360;  // planar bodies, over [0, pi)
  int planar_offsets = 200;
  int random_directions = 1024;  // dimension >= 3
  int offsets = 100;
  bool refine = true;
  bool keep_grid = false;
  std::size_t screening_samples = 20000;
  EstimatorConfig estimator;
};

// One grid cell of the search: `direction` is the angle in radians for
// planar bodies and the direction index otherwise.
struct GridPoint {
  double direction = 0.0;
  double offset = 0.0;
  double quotient = 0.0;
};

struct SearchResult {
  HyperplaneCut cut;
  CutEvaluation evaluation;
  double quotient = 0.0;
  double quotient_stderr = 0.0;
  double diameter = 0.0;
  geometry::Measured volume;
  geometry::Measured mean_dist;
  CutBoundReport report;
  std::vector<GridPoint> grid;
  bool planar_grid = false;
};

namespace detail {

struct Candidate {
  Point normal;
  double offset = 0.0;
  double quotient = -1.0;
};

inline double offset_at(std::pair<double, double> support, int j, int count) {
  return support.first + (j + 0.5) * (support.second - support.first) / count;
}

// Quotient of an exact cut, or -1 for cuts with a (near) empty side.
inline double exact_quotient(const ConvexBody& body, const HyperplaneCut& cut, double total) {
  const auto e = evaluate_exact(body, cut);
  if (!e || std::min(e->vol_S, e->vol_comp) < 1e-9 * total || !(e->cut_area > 0.0)) return -1.0;
  return e->vol_S * e->vol_comp / e->cut_area;
}

inline Point planar_normal(double angle) { return {std::cos(angle), std::sin(angle)}; }

inline Candidate search_planar(const ConvexBody& body, const SearchConfig& sc, double total,
                               std::vector<GridPoint>* grid) {
  const int nd = body.dimension() == 1 ? 1 : sc.angular_directions;
  const int no = sc.planar_offsets;
  const double step_angle = std::numbers::pi / nd;
  auto normal_at = [&](double angle) { return body.dimension() == 1 ? Point{1.0} : planar_normal(angle); };

  Candidate best;
  int best_i = 0;
  for (int i = 0; i < nd; ++i) {
    const double angle = i * step_angle;
    const Point u = normal_at(angle);
    const auto sup = body.support(u);
    for (int j = 0; j < no; ++j) {
      const double t = offset_at(sup, j, no);
      const double q = exact_quotient(body, {u, t}, total);
      if (grid) grid->push_back({angle, t, std::max(q, 0.0)});
      if (q > best.quotient + 1e-12) {
        best = {u, t, q};
        best_i = i;
      }
    }
  }
  if (!sc.refine || best.quotient <= 0.0) return best;

  // golden section on the offset, nested inside golden section on the angle
  const double best_angle = best_i * step_angle;
  auto best_offset_for = [&](double angle, double center, double half) -> ScalarMax {
    const Point u = normal_at(angle);
    return golden_section_max([&](double t) { return exact_quotient(body, {u, t}, total); },
                              center - half, center + half, 1e-12);
  };
  const auto sup = body.support(best.normal);
  const double dt = (sup.second - sup.first) / no;
  ScalarMax inner = best_offset_for(best_angle, best.offset, dt);
  Candidate refined{normal_at(best_angle), inner.x, inner.value};
  if (body.dimension() == 2) {
    const ScalarMax outer = golden_section_max(
        [&](double angle) { return best_offset_for(angle, refined.offset, 2.0 * dt).value; },
        best_angle - step_angle, best_angle + step_angle, 1e-10);
    const ScalarMax at = best_offset_for(outer.x, refined.offset, 2.0 * dt);
    if (at.value > refined.quotient) refined = {normal_at(outer.x), at.x, at.value};
  }
  return refined.quotient > best.quotient ? refined : best;
}

// Screening estimator shared by all candidate cuts in dimension >= 3: side
// volumes from projected body samples, cut area from a slab around the plane.
class ProjectionScreen {
 public:
  ProjectionScreen(const ConvexBody& body, const SearchConfig& sc, double total) : body_(body), total_(total) {
    EstimatorConfig cfg = sc.estimator;
    cfg.sample_count = std::max<std::size_t>(100, std::min(cfg.sample_count, sc.screening_samples));
    samples_ = geometry::sample_uniform(body, cfg);
  }

  // Sorted projections and support interval for one direction.
  void project(const Point& u) {
    proj_.resize(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) proj_[i] = vec::dot(u, samples_[i]);
    std::sort(proj_.begin(), proj_.end());
    support_ = body_.support(u);
    slab_ = 0.04 * (support_.second - support_.first);
  }

  double quotient(double t) const {
    const double n = static_cast<double>(proj_.size());
    const auto below = std::lower_bound(proj_.begin(), proj_.end(), t) - proj_.begin();
    const auto a = std::lower_bound(proj_.begin(), proj_.end(), t - 0.5 * slab_) - proj_.begin();
    const auto b = std::upper_bound(proj_.begin(), proj_.end(), t + 0.5 * slab_) - proj_.begin();
    const double vs = total_ * static_cast<double>(below) / n;
    const double vc = total_ - vs;
    const double area = total_ * static_cast<double>(b - a) / (n * slab_);
    if (b == a || std::min(vs, vc) < 1e-9 * total_) return -1.0;
    return vs * vc / area;
  }

  std::pair<double, double> support() const { return support_; }

 private:
  const ConvexBody& body_;
  double total_;
  std::vector<Point> samples_;
  std::vector<double> proj_;
  std::pair<double, double> support_;
  double slab_ = 0.0;
};

inline Candidate search_spatial(const ConvexBody& body, const SearchConfig& sc, double total,
                                std::vector<GridPoint>* grid) {
  const std::size_t n = body.dimension();
  std::vector<Point> dirs;
  for (std::size_t k = 0; k < n; ++k) {
    Point e(n, 0.0);
    e[k] = 1.0;
    dirs.push_back(e);
  }
  Rng rng(sc.estimator.seed, kSearchStream);
  for (int i = 0; i < sc.random_directions; ++i) dirs.push_back(rng.direction(n));

  ProjectionScreen screen(body, sc, total);
  auto score = [&](const Point& u, double t) {
    if (auto e = evaluate_exact(body, {u, t})) {
      if (std::min(e->vol_S, e->vol_comp) < 1e-9 * total || !(e->cut_area > 0.0)) return -1.0;
      return e->vol_S * e->vol_comp / e->cut_area;
    }
    return screen.quotient(t);
  };

  Candidate best;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    screen.project(dirs[i]);
    const auto sup = screen.support();
    for (int j = 0; j < sc.offsets; ++j) {
      const double t = offset_at(sup, j, sc.offsets);
      const double q = score(dirs[i], t);
      if (grid) grid->push_back({double(i), t, std::max(q, 0.0)});
      if (q > best.quotient + 1e-12) best = {dirs[i], t, q};
    }
  }
  if (!sc.refine || best.quotient <= 0.0) return best;

  // random local perturbations of the direction at shrinking scales, with the
  // offset re-optimized by golden section each time
  for (double scale : {0.2, 0.05, 0.01}) {
    for (int k = 0; k < 16; ++k) {
      Point u = vec::axpy(best.normal, scale, rng.direction(n));
      const double len = vec::norm(u);
      for (double& x : u) x /= len;
      screen.project(u);
      const auto sup = screen.support();
      const double dt = (sup.second - sup.first) / sc.offsets;
      const ScalarMax m = golden_section_max([&](double t) { return score(u, t); },
                                             std::max(sup.first, best.offset - 3 * dt),
                                             std::min(sup.second, best.offset + 3 * dt), 1e-9);
      if (m.value > best.quotient + 1e-12) best = {u, m.x, m.value};
    }
  }
  return best;
}

}  // namespace detail

// Maximizes |S| |S^c| / area over hyperplane cuts. Planar bodies use an
// angular x offset grid with golden-section refinement; higher dimensions use
// random directions screened by projected samples, and the winning cut is
// re-evaluated with evaluate_cut. The report compares the maximum with the
// upper bounds diam |body| / 4, M |body| / log 2 and Bokowski's bound.
inline SearchResult search_max_quotient(const ConvexBody& body, const SearchConfig& sc = {}) {
  SearchResult r;
  const auto summary = geometry::summarize(body, sc.estimator);
  r.diameter = summary.diameter;
  r.volume = summary.volume;
  r.mean_dist = summary.mean_dist_to_centroid;
  r.planar_grid = body.dimension() <= 2;
  std::vector<GridPoint>* grid = sc.keep_grid ? &r.grid : nullptr;
  const detail::Candidate best = body.dimension() <= 2
                                     ? detail::search_planar(body, sc, r.volume.value, grid)
                                     : detail::search_spatial(body, sc, r.volume.value, grid);
  if (best.quotient <= 0.0) throw InvariantViolation("cut search found no admissible cut");
  r.cut = {best.normal, best.offset};
  EstimatorConfig cfg = sc.estimator;
  cfg.seed = derive_seed(cfg.seed, detail::kSearchStream + 1);
  r.evaluation = evaluate_cut(body, r.cut, cfg);
  r.quotient = quotient(r.evaluation);
  r.quotient_stderr = quotient_stderr(r.evaluation);

  const double vol = r.volume.value;
  r.report = cut_report(r.evaluation, r.diameter, r.evaluation.vol_S + r.evaluation.vol_comp);
  r.report.entries.push_back(detail::upper_entry("diam_quarter", r.diameter * vol / 4.0,
                                                 r.diameter * r.volume.std_error / 4.0, r.quotient,
                                                 r.quotient_stderr));
  const double kls = r.mean_dist.value * vol / std::numbers::ln2;
  const double kls_se =
      std::hypot(r.mean_dist.std_error * vol, r.mean_dist.value * r.volume.std_error) / std::numbers::ln2;
  r.report.entries.push_back(detail::upper_entry("kls_quotient", kls, kls_se, r.quotient, r.quotient_stderr));
  if (body.dimension() >= 2)
    r.report.entries.push_back(detail::upper_entry("bokowski",
                                                   bokowski_bound(int(body.dimension()), r.diameter), 0.0,
                                                   r.quotient, r.quotient_stderr));
  return r;
}

}  // namespace l1p::cuts
