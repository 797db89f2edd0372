#pragma once

// Convex bodies and their geometric functionals: diameter, centroid, volume,
// uniform sampling, mean distance to the center of gravity and the
// root second moment about it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "l1p/error.hpp"
#include "l1p/minnorm.hpp"
#include "l1p/polygon.hpp"
#include "l1p/random.hpp"
#include "l1p/vec.hpp"

namespace l1p::geometry {

struct VPolytope {
  std::vector<Point> vertices;  // in 2D: the CCW convex hull
};

struct Ball {
  Point center;
  double radius = 1.0;
};

struct Box {
  Point lower;
  Point upper;
};

// Unit-diameter regular simplex centered at the origin.
struct RegularSimplex {
  int dimension = 1;
  std::vector<Point> vertices;
  double circumradius_sq = 0.25;
};

using WarningSink = std::function<void(std::string_view)>;

class ConvexBody {
 public:
  using Representation = std::variant<VPolytope, Ball, Box, RegularSimplex>;

  static ConvexBody polytope(std::vector<Point> vertices, const WarningSink& warn = {});
  static ConvexBody ball(Point center, double radius);
  static ConvexBody box(Point lower, Point upper);
  static ConvexBody regular_simplex(int n);

  std::size_t dimension() const { return dim_; }
  const Representation& representation() const { return rep_; }
  template <class T>
  const T* as() const {
    return std::get_if<T>(&rep_);
  }
  std::string_view kind() const {
    static constexpr std::string_view names[] = {"polytope", "ball", "box", "simplex"};
    return names[rep_.index()];
  }

  // Exact polygon for every planar body except the disc.
  const std::optional<polygon::Polygon>& planar_polygon() const { return polygon_; }

  // The body as an interval when the dimension is one.
  std::pair<double, double> segment() const { return {bbox_lower_[0], bbox_upper_[0]}; }

  const Point& bbox_lower() const { return bbox_lower_; }
  const Point& bbox_upper() const { return bbox_upper_; }

  // A point guaranteed to be interior: ball/box center, simplex origin,
  // polytope vertex average.
  const Point& interior_point() const { return interior_; }

  // Radius of a ball around interior_point() containing the body.
  double enclosing_radius() const { return enclosing_radius_; }

  // [min, max] of <dir, x> over the body.
  std::pair<double, double> support(std::span<const double> dir) const;

 private:
  ConvexBody(Representation rep, std::size_t dim) : rep_(std::move(rep)), dim_(dim) {}
  void finalize();

  Representation rep_;
  std::size_t dim_;
  std::optional<polygon::Polygon> polygon_;
  Point bbox_lower_, bbox_upper_, interior_;
  double enclosing_radius_ = 0.0;
};

enum class SamplingMethod { automatic, rejection, hit_and_run };

inline const char* to_string(SamplingMethod m) {
  switch (m) {
    case SamplingMethod::automatic: return "auto";
    case SamplingMethod::rejection: return "rejection";
    case SamplingMethod::hit_and_run: return "hit_and_run";
  }
  return "auto";
}

struct EstimatorConfig {
  std::size_t sample_count = 100000;
  std::uint64_t seed = 0;
  SamplingMethod method = SamplingMethod::automatic;
  std::size_t burn_in = 1000;

  void validate() const {
    if (sample_count < 100)
      throw Error(ErrorCode::invalid_argument, "sample_count must be at least 100");
  }
};

// Rejection up to this dimension, hit-and-run above.
inline constexpr std::size_t kRejectionMaxDimension = 6;

inline SamplingMethod resolve_method(const ConvexBody& body, SamplingMethod m) {
  if (m != SamplingMethod::automatic) return m;
  return body.dimension() <= kRejectionMaxDimension ? SamplingMethod::rejection
                                                    : SamplingMethod::hit_and_run;
}

// A value with its Monte Carlo standard error; std_error is 0 on exact paths.
struct Measured {
  double value = 0.0;
  double std_error = 0.0;
  bool exact = true;
};

struct GeometrySummary {
  double diameter = 0.0;
  Point centroid;
  Point centroid_std_error;  // per coordinate, zero when exact
  bool centroid_exact = true;
  Measured volume;
  Measured mean_dist_to_centroid;
  Measured second_moment_root;
  // Closed-form root second moment for regular simplices, the certified
  // upper bound on the mean distance.
  std::optional<double> simplex_second_moment_bound;
};

// ---------------------------------------------------------------------------
// Construction

namespace detail {

inline double unit_ball_volume(std::size_t n) {
  const double h = 0.5 * static_cast<double>(n);
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

// Numerical affine rank of a point set.
inline std::size_t affine_rank(const std::vector<Point>& pts) {
  if (pts.empty()) return 0;
  std::vector<Point> basis;
  double scale = 0.0;
  for (const Point& p : pts) scale = std::max(scale, vec::distance(p, pts[0]));
  if (scale == 0.0) return 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Point v = vec::sub(pts[i], pts[0]);
    for (int pass = 0; pass < 2; ++pass)
      for (const Point& b : basis) {
        const double c = vec::dot(v, b);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * b[k];
      }
    const double len = vec::norm(v);
    if (len > 1e-10 * scale) {
      for (double& x : v) x /= len;
      basis.push_back(std::move(v));
    }
  }
  return basis.size();
}

inline polygon::Polygon to_polygon(const std::vector<Point>& pts) {
  polygon::Polygon out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.push_back({p[0], p[1]});
  return out;
}

}  // namespace detail

inline ConvexBody ConvexBody::polytope(std::vector<Point> vertices, const WarningSink& warn) {
  if (vertices.empty()) throw Error(ErrorCode::invalid_dimension, "polytope has no vertices");
  const std::size_t n = vertices[0].size();
  if (n < 1) throw Error(ErrorCode::invalid_dimension, "polytope vertices have dimension 0");
  for (const Point& v : vertices) {
    vec::require_same_dim(n, v.size(), "polytope vertex");
    if (!vec::all_finite(v)) throw Error(ErrorCode::invalid_argument, "non-finite vertex coordinate");
  }
  if (vertices.size() < n + 1 || detail::affine_rank(vertices) < n)
    throw Error(ErrorCode::degenerate_body,
                "polytope vertices do not affinely span dimension " + std::to_string(n));
  if (n == 1) {
    auto [lo, hi] = std::minmax_element(vertices.begin(), vertices.end());
    vertices = {*lo, *hi};
  } else if (n == 2) {
    const polygon::Polygon input = detail::to_polygon(vertices);
    const polygon::Polygon hull = polygon::convex_hull(input);
    bool unchanged = hull.size() == input.size();
    if (unchanged) {
      // same cyclic sequence?
      std::size_t off = 0;
      while (off < input.size() && !(input[off].x == hull[0].x && input[off].y == hull[0].y)) ++off;
      for (std::size_t i = 0; unchanged && i < hull.size(); ++i) {
        const auto& a = input[(off + i) % input.size()];
        unchanged = off < input.size() && a.x == hull[i].x && a.y == hull[i].y;
      }
    }
    if (!unchanged && warn)
      warn("polygon vertices normalized to their counterclockwise convex hull");
    vertices.clear();
    for (const auto& v : hull) vertices.push_back({v.x, v.y});
  }
  ConvexBody body(VPolytope{std::move(vertices)}, n);
  body.finalize();
  return body;
}

inline ConvexBody ConvexBody::ball(Point center, double radius) {
  if (center.empty()) throw Error(ErrorCode::invalid_dimension, "ball center has dimension 0");
  if (!vec::all_finite(center) || !std::isfinite(radius))
    throw Error(ErrorCode::invalid_argument, "non-finite ball parameters");
  if (!(radius > 0.0)) throw Error(ErrorCode::degenerate_body, "ball radius must be positive");
  const std::size_t n = center.size();
  ConvexBody body(Ball{std::move(center), radius}, n);
  body.finalize();
  return body;
}

inline ConvexBody ConvexBody::box(Point lower, Point upper) {
  if (lower.empty()) throw Error(ErrorCode::invalid_dimension, "box has dimension 0");
  vec::require_same_dim(lower.size(), upper.size(), "box upper corner");
  if (!vec::all_finite(lower) || !vec::all_finite(upper))
    throw Error(ErrorCode::invalid_argument, "non-finite box corner");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!(lower[i] < upper[i]))
      throw Error(ErrorCode::degenerate_body, "box requires lower < upper in every coordinate");
  const std::size_t n = lower.size();
  ConvexBody body(Box{std::move(lower), std::move(upper)}, n);
  body.finalize();
  return body;
}

// Built in R^n by repeatedly erecting a new vertex above the centroid of the
// previous ones at the height that makes all edges unit length, then
// translated so the centroid is the origin.
inline ConvexBody ConvexBody::regular_simplex(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_dimension, "regular simplex needs n >= 1");
  const auto dim = static_cast<std::size_t>(n);
  std::vector<Point> v(dim + 1, Point(dim, 0.0));
  Point sum(dim, 0.0);
  for (std::size_t k = 1; k <= dim; ++k) {
    const double kk = static_cast<double>(k);
    for (std::size_t c = 0; c < dim; ++c) sum[c] += v[k - 1][c];
    for (std::size_t c = 0; c < dim; ++c) v[k][c] = sum[c] / kk;
    v[k][k - 1] = std::sqrt((kk + 1.0) / (2.0 * kk));
  }
  for (std::size_t c = 0; c < dim; ++c) sum[c] += v[dim][c];
  for (Point& p : v)
    for (std::size_t c = 0; c < dim; ++c) p[c] -= sum[c] / static_cast<double>(dim + 1);
  double min_d = std::numeric_limits<double>::infinity();
  double max_d = 0.0;
  for (std::size_t i = 0; i <= dim; ++i)
    for (std::size_t j = i + 1; j <= dim; ++j) {
      const double d = vec::distance(v[i], v[j]);
      min_d = std::min(min_d, d);
      max_d = std::max(max_d, d);
    }
  const double s = 2.0 / (min_d + max_d);
  for (Point& p : v)
    for (double& x : p) x *= s;
  const double nd = static_cast<double>(n);
  ConvexBody body(RegularSimplex{n, std::move(v), nd / (2.0 * (nd + 1.0))}, dim);
  body.finalize();
  return body;
}

inline ConvexBody make_regular_simplex(int n) { return ConvexBody::regular_simplex(n); }

inline void ConvexBody::finalize() {
  const std::size_t n = dim_;
  bbox_lower_.assign(n, std::numeric_limits<double>::infinity());
  bbox_upper_.assign(n, -std::numeric_limits<double>::infinity());
  auto extend = [&](const Point& p) {
    for (std::size_t c = 0; c < n; ++c) {
      bbox_lower_[c] = std::min(bbox_lower_[c], p[c]);
      bbox_upper_[c] = std::max(bbox_upper_[c], p[c]);
    }
  };
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, VPolytope> || std::is_same_v<T, RegularSimplex>) {
          interior_.assign(n, 0.0);
          for (const Point& p : r.vertices) {
            extend(p);
            for (std::size_t c = 0; c < n; ++c) interior_[c] += p[c];
          }
          for (double& x : interior_) x /= static_cast<double>(r.vertices.size());
          for (const Point& p : r.vertices)
            enclosing_radius_ = std::max(enclosing_radius_, vec::distance(p, interior_));
          if (n == 2) polygon_ = polygon::convex_hull(detail::to_polygon(r.vertices));
        } else if constexpr (std::is_same_v<T, Ball>) {
          interior_ = r.center;
          for (std::size_t c = 0; c < n; ++c) {
            bbox_lower_[c] = r.center[c] - r.radius;
            bbox_upper_[c] = r.center[c] + r.radius;
          }
          enclosing_radius_ = r.radius;
        } else {
          bbox_lower_ = r.lower;
          bbox_upper_ = r.upper;
          interior_.resize(n);
          for (std::size_t c = 0; c < n; ++c) interior_[c] = 0.5 * (r.lower[c] + r.upper[c]);
          enclosing_radius_ = 0.5 * vec::distance(r.lower, r.upper);
          if (n == 2)
            polygon_ = polygon::Polygon{{r.lower[0], r.lower[1]},
                                        {r.upper[0], r.lower[1]},
                                        {r.upper[0], r.upper[1]},
                                        {r.lower[0], r.upper[1]}};
        }
      },
      rep_);
}

inline std::pair<double, double> ConvexBody::support(std::span<const double> dir) const {
  vec::require_same_dim(dim_, dir.size(), "support direction");
  return std::visit(
      [&](const auto& r) -> std::pair<double, double> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, VPolytope> || std::is_same_v<T, RegularSimplex>) {
          double lo = std::numeric_limits<double>::infinity(), hi = -lo;
          for (const Point& p : r.vertices) {
            const double v = vec::dot(dir, p);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
          }
          return {lo, hi};
        } else if constexpr (std::is_same_v<T, Ball>) {
          const double c = vec::dot(dir, r.center);
          const double w = r.radius * vec::norm(dir);
          return {c - w, c + w};
        } else {
          double lo = 0.0, hi = 0.0;
          for (std::size_t i = 0; i < dim_; ++i) {
            lo += dir[i] * (dir[i] >= 0 ? r.lower[i] : r.upper[i]);
            hi += dir[i] * (dir[i] >= 0 ? r.upper[i] : r.lower[i]);
          }
          return {lo, hi};
        }
      },
      rep_);
}

// ---------------------------------------------------------------------------
// Closed-form functionals

inline double diameter(const ConvexBody& body) {
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, VPolytope>) {
          if (body.dimension() == 2) return polygon::diameter(*body.planar_polygon());
          double best = 0.0;
          for (std::size_t i = 0; i < r.vertices.size(); ++i)
            for (std::size_t j = i + 1; j < r.vertices.size(); ++j)
              best = std::max(best, vec::distance(r.vertices[i], r.vertices[j]));
          return best;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return 2.0 * r.radius;
        } else if constexpr (std::is_same_v<T, Box>) {
          return vec::distance(r.lower, r.upper);
        } else {
          return 1.0;
        }
      },
      body.representation());
}

// Closed-set membership with a small tolerance relative to the body's size.
inline bool contains(const ConvexBody& body, std::span<const double> p) {
  vec::require_same_dim(body.dimension(), p.size(), "contains");
  const double tol = 1e-10 * std::max(body.enclosing_radius(), 1e-300);
  return std::visit(
      [&](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return vec::distance(p, r.center) <= r.radius + tol;
        } else if constexpr (std::is_same_v<T, Box>) {
          for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] < r.lower[i] - tol || p[i] > r.upper[i] + tol) return false;
          return true;
        } else if constexpr (std::is_same_v<T, RegularSimplex>) {
          const double n = static_cast<double>(r.dimension);
          for (const Point& v : r.vertices) {
            // barycentric coordinate of p with respect to vertex v
            const double lambda = (1.0 + n * vec::dot(p, v) / r.circumradius_sq) / (n + 1.0);
            if (lambda < -tol) return false;
          }
          return true;
        } else {
          const std::size_t n = body.dimension();
          if (n == 1) return p[0] >= r.vertices[0][0] - tol && p[0] <= r.vertices[1][0] + tol;
          if (n == 2) return polygon::contains(*body.planar_polygon(), {p[0], p[1]}, tol);
          for (std::size_t c = 0; c < n; ++c)
            if (p[c] < body.bbox_lower()[c] - tol || p[c] > body.bbox_upper()[c] + tol) return false;
          return minnorm::distance_to_hull(r.vertices, p) <= tol;
        }
      },
      body.representation());
}

// Closed forms: segments, balls, boxes, regular simplices and polygons.
inline std::optional<double> exact_volume(const ConvexBody& body) {
  const std::size_t n = body.dimension();
  if (n == 1) return body.segment().second - body.segment().first;
  if (const auto* b = body.as<Ball>()) return detail::unit_ball_volume(n) * std::pow(b->radius, double(n));
  if (const auto* b = body.as<Box>()) {
    double v = 1.0;
    for (std::size_t i = 0; i < n; ++i) v *= b->upper[i] - b->lower[i];
    return v;
  }
  if (body.as<RegularSimplex>()) {
    const double nd = static_cast<double>(n);
    return std::sqrt((nd + 1.0) / std::pow(2.0, nd)) / std::tgamma(nd + 1.0);
  }
  if (body.planar_polygon()) return polygon::area(*body.planar_polygon());
  return std::nullopt;
}

inline std::optional<Point> exact_centroid(const ConvexBody& body) {
  const std::size_t n = body.dimension();
  if (n == 1) return Point{0.5 * (body.segment().first + body.segment().second)};
  if (const auto* b = body.as<Ball>()) return b->center;
  if (body.as<Box>() || body.as<RegularSimplex>()) return body.interior_point();
  if (body.planar_polygon()) {
    const auto c = polygon::centroid(*body.planar_polygon());
    return Point{c.x, c.y};
  }
  return std::nullopt;
}

// sqrt(n / (2 (n+1) (n+2))): root second moment about the centroid of the
// unit-diameter regular simplex in R^n.
inline double simplex_second_moment(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_dimension, "simplex_second_moment needs n >= 1");
  const double nd = static_cast<double>(n);
  return std::sqrt(nd / (2.0 * (nd + 1.0) * (nd + 2.0)));
}

// ---------------------------------------------------------------------------
// Sampling

namespace detail {

inline constexpr std::size_t kChunk = 4096;
inline constexpr std::uint64_t kRejectionStreams = 0;
inline constexpr std::uint64_t kChainStreams = 1ULL << 32;
inline constexpr std::size_t kChains = 4;

struct RejectionStats {
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
};

// Uniform samples from the bounding box, chunk k driven by its own stream.
inline std::vector<Point> rejection_sample(const ConvexBody& body, const EstimatorConfig& cfg,
                                           RejectionStats* stats = nullptr) {
  const std::size_t n = body.dimension();
  std::vector<Point> out;
  out.reserve(cfg.sample_count);
  RejectionStats total;
  constexpr std::uint64_t kProbe = 1000000;
  for (std::size_t chunk = 0; out.size() < cfg.sample_count; ++chunk) {
    Rng rng(cfg.seed, kRejectionStreams + chunk);
    const std::size_t want = std::min(kChunk, cfg.sample_count - out.size());
    std::size_t got = 0;
    Point p(n);
    while (got < want) {
      for (std::size_t c = 0; c < n; ++c) p[c] = rng.uniform(body.bbox_lower()[c], body.bbox_upper()[c]);
      ++total.attempts;
      if (contains(body, p)) {
        out.push_back(p);
        ++got;
        ++total.accepted;
      }
      if (total.attempts % kProbe == 0 &&
          static_cast<double>(total.accepted) < 1e-6 * static_cast<double>(total.attempts))
        throw Error(ErrorCode::sampling_failure,
                    "rejection acceptance rate below 1e-6; use the hit_and_run method");
    }
  }
  if (stats) *stats = total;
  return out;
}

// Exact chord {t : x + t d in body}, or bisection on membership for
// general-dimension polytopes.
inline std::pair<double, double> chord(const ConvexBody& body, const Point& x, const Point& d) {
  const double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      [&](const auto& r) -> std::pair<double, double> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Ball>) {
          const Point xc = vec::sub(x, r.center);
          const double b = vec::dot(xc, d);
          const double c = vec::dot(xc, xc) - r.radius * r.radius;
          const double disc = std::sqrt(std::max(0.0, b * b - c));
          return {-b - disc, -b + disc};
        } else if constexpr (std::is_same_v<T, Box>) {
          double lo = -inf, hi = inf;
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (d[i] == 0.0) continue;
            double a = (r.lower[i] - x[i]) / d[i], b = (r.upper[i] - x[i]) / d[i];
            if (a > b) std::swap(a, b);
            lo = std::max(lo, a);
            hi = std::min(hi, b);
          }
          return {lo, hi};
        } else if constexpr (std::is_same_v<T, RegularSimplex>) {
          const double n = static_cast<double>(r.dimension);
          const double k = n / r.circumradius_sq;
          double lo = -inf, hi = inf;
          for (const Point& v : r.vertices) {
            const double lam = (1.0 + k * vec::dot(x, v)) / (n + 1.0);
            const double mu = k * vec::dot(d, v) / (n + 1.0);
            if (mu > 0) lo = std::max(lo, -lam / mu);
            else if (mu < 0) hi = std::min(hi, -lam / mu);
          }
          return {lo, hi};
        } else {
          if (body.planar_polygon()) {
            const auto& poly = *body.planar_polygon();
            double lo = -inf, hi = inf;
            for (std::size_t i = 0; i < poly.size(); ++i) {
              const auto e = poly[(i + 1) % poly.size()] - poly[i];
              const double c0 = polygon::cross(e, polygon::Vec2{x[0], x[1]} - poly[i]);
              const double c1 = polygon::cross(e, polygon::Vec2{d[0], d[1]});
              if (c1 == 0.0) continue;
              const double s = -c0 / c1;
              if (c1 > 0) lo = std::max(lo, s);
              else hi = std::min(hi, s);
            }
            return {lo, hi};
          }
          const double reach = 2.0 * body.enclosing_radius() + 1e-12;
          auto edge = [&](double sign) {
            double in = 0.0, out = reach;
            for (int it = 0; it < 60; ++it) {
              const double mid = 0.5 * (in + out);
              if (contains(body, vec::axpy(x, sign * mid, d))) in = mid;
              else out = mid;
            }
            return in;
          };
          return {-edge(-1.0), edge(1.0)};
        }
      },
      body.representation());
}

// Independent hit-and-run chains, each with burn-in, thinned by the dimension.
inline std::vector<Point> hit_and_run_sample(const ConvexBody& body, const EstimatorConfig& cfg) {
  const std::size_t n = body.dimension();
  std::vector<Point> out;
  out.reserve(cfg.sample_count);
  const std::size_t thin = std::max<std::size_t>(1, n);
  for (std::size_t chain = 0; chain < kChains; ++chain) {
    const std::size_t want = cfg.sample_count / kChains + (chain < cfg.sample_count % kChains ? 1 : 0);
    Rng rng(cfg.seed, kChainStreams + chain);
    Point x = body.interior_point();
    auto step = [&] {
      const Point d = rng.direction(n);
      const auto [lo, hi] = chord(body, x, d);
      if (!(hi > lo)) return;
      const Point next = vec::axpy(x, rng.uniform(lo, hi), d);
      // stay in the closed body despite rounding at the chord ends
      if (contains(body, next)) x = next;
    };
    for (std::size_t i = 0; i < cfg.burn_in; ++i) step();
    for (std::size_t s = 0; s < want; ++s) {
      for (std::size_t t = 0; t < thin; ++t) step();
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace detail

// Deterministic given (body, cfg). Every returned point satisfies contains().
inline std::vector<Point> sample_uniform(const ConvexBody& body, const EstimatorConfig& cfg) {
  cfg.validate();
  if (resolve_method(body, cfg.method) == SamplingMethod::rejection)
    return detail::rejection_sample(body, cfg);
  return detail::hit_and_run_sample(body, cfg);
}

inline Measured volume(const ConvexBody& body, const EstimatorConfig& cfg = {}) {
  if (auto v = exact_volume(body)) return {*v, 0.0, true};
  // general-dimension polytope: accepted fraction of bounding-box draws
  cfg.validate();
  detail::RejectionStats stats;
  detail::rejection_sample(body, cfg, &stats);
  double box = 1.0;
  for (std::size_t c = 0; c < body.dimension(); ++c) box *= body.bbox_upper()[c] - body.bbox_lower()[c];
  const double frac = static_cast<double>(stats.accepted) / static_cast<double>(stats.attempts);
  const double se = std::sqrt(frac * (1.0 - frac) / static_cast<double>(stats.attempts));
  return {box * frac, box * se, false};
}

inline Point centroid_from_samples(std::span<const Point> samples) {
  Point c(samples.front().size(), 0.0);
  for (const Point& p : samples)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
  for (double& x : c) x /= static_cast<double>(samples.size());
  return c;
}

inline Point centroid(const ConvexBody& body, const EstimatorConfig& cfg = {}) {
  if (auto c = exact_centroid(body)) return *c;
  return centroid_from_samples(sample_uniform(body, cfg));
}

namespace detail {

inline Measured mean_distance(std::span<const Point> samples, const Point& center, double power) {
  std::vector<double> d;
  d.reserve(samples.size());
  for (const Point& p : samples) {
    const double r = vec::distance(p, center);
    d.push_back(power == 1.0 ? r : r * r);
  }
  const MeanEstimate e = batch_mean(d);
  return {e.mean, e.std_error, false};
}

inline Measured mean_dist_from_samples(const ConvexBody& body, std::span<const Point> samples,
                                       const Point& center) {
  if (body.dimension() == 1) {
    const auto [a, b] = body.segment();
    return {(b - a) / 4.0, 0.0, true};
  }
  return mean_distance(samples, center, 1.0);
}

inline Measured second_moment_from_samples(const ConvexBody& body, std::span<const Point> samples,
                                           const Point& center) {
  const double n = static_cast<double>(body.dimension());
  if (body.dimension() == 1) {
    const auto [a, b] = body.segment();
    return {(b - a) / std::sqrt(12.0), 0.0, true};
  }
  if (const auto* s = body.as<RegularSimplex>()) return {simplex_second_moment(s->dimension), 0.0, true};
  if (const auto* b = body.as<Ball>()) return {b->radius * std::sqrt(n / (n + 2.0)), 0.0, true};
  if (const auto* b = body.as<Box>()) {
    double s = 0.0;
    for (std::size_t i = 0; i < body.dimension(); ++i) {
      const double w = b->upper[i] - b->lower[i];
      s += w * w / 12.0;
    }
    return {std::sqrt(s), 0.0, true};
  }
  const Measured sq = mean_distance(samples, center, 2.0);
  const double root = std::sqrt(sq.value);
  return {root, sq.std_error / (2.0 * root), false};
}

}  // namespace detail

// M(body): mean distance from a uniform point to the center of gravity.
inline Measured mean_dist_to_centroid(const ConvexBody& body, const EstimatorConfig& cfg) {
  if (body.dimension() == 1) return detail::mean_dist_from_samples(body, {}, {});
  const auto samples = sample_uniform(body, cfg);
  const Point c = exact_centroid(body).value_or(centroid_from_samples(samples));
  return detail::mean_dist_from_samples(body, samples, c);
}

inline Measured second_moment_root(const ConvexBody& body, const EstimatorConfig& cfg) {
  if (body.dimension() == 1 || body.as<RegularSimplex>() || body.as<Ball>() || body.as<Box>())
    return detail::second_moment_from_samples(body, {}, {});
  const auto samples = sample_uniform(body, cfg);
  const Point c = exact_centroid(body).value_or(centroid_from_samples(samples));
  return detail::second_moment_from_samples(body, samples, c);
}

// All functionals from one shared sample set.
inline GeometrySummary summarize(const ConvexBody& body, const EstimatorConfig& cfg) {
  cfg.validate();
  GeometrySummary s;
  s.diameter = diameter(body);
  std::vector<Point> samples;
  if (body.dimension() > 1) samples = sample_uniform(body, cfg);
  if (auto c = exact_centroid(body)) {
    s.centroid = *c;
    s.centroid_std_error.assign(c->size(), 0.0);
  } else {
    s.centroid_exact = false;
    std::vector<double> coord(samples.size());
    for (std::size_t i = 0; i < body.dimension(); ++i) {
      for (std::size_t k = 0; k < samples.size(); ++k) coord[k] = samples[k][i];
      const MeanEstimate e = batch_mean(coord);
      s.centroid.push_back(e.mean);
      s.centroid_std_error.push_back(e.std_error);
    }
  }
  s.volume = volume(body, cfg);
  s.mean_dist_to_centroid = detail::mean_dist_from_samples(body, samples, s.centroid);
  s.second_moment_root = detail::second_moment_from_samples(body, samples, s.centroid);
  if (const auto* simplex = body.as<RegularSimplex>())
    s.simplex_second_moment_bound = simplex_second_moment(simplex->dimension);
  if (!(s.volume.value > 0.0)) throw InvariantViolation("non-positive volume estimate");
  if (s.mean_dist_to_centroid.value > s.diameter * (1.0 + 1e-9))
    throw InvariantViolation("mean distance to centroid exceeds the diameter");
  return s;
}

}  // namespace l1p::geometry
