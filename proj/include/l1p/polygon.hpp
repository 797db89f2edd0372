#pragma once

// Planar convex polygon kernel: hull, shoelace area and centroid, half-plane
// clipping, chord length and rotating-calipers diameter. Polygons are
// counterclockwise vertex lists without repeated closing vertex.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace l1p::polygon {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double length(Vec2 a) { return std::hypot(a.x, a.y); }

using Polygon = std::vector<Vec2>;

inline double signed_area(const Polygon& p) {
  const std::size_t n = p.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += cross(p[i], p[(i + 1) % n]);
  return 0.5 * s;
}

inline double area(const Polygon& p) { return std::abs(signed_area(p)); }

// Andrew's monotone chain. Drops collinear and duplicate points; result is CCW.
inline Polygon convex_hull(Polygon pts) {
  std::sort(pts.begin(), pts.end(),
            [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() < 3) return pts;
  Polygon hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i - 1] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

// Area-weighted centroid of the fan triangulation from vertex 0.
inline Vec2 centroid(const Polygon& p) {
  double a_total = 0.0;
  Vec2 acc{};
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const double a = 0.5 * cross(p[i] - p[0], p[i + 1] - p[0]);
    const Vec2 c{(p[0].x + p[i].x + p[i + 1].x) / 3.0, (p[0].y + p[i].y + p[i + 1].y) / 3.0};
    acc = acc + a * c;
    a_total += a;
  }
  return {acc.x / a_total, acc.y / a_total};
}

// Closed membership for a CCW convex polygon; tol is an absolute distance.
inline bool contains(const Polygon& p, Vec2 q, double tol) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = p[(i + 1) % n] - p[i];
    if (cross(e, q - p[i]) < -tol * length(e)) return false;
  }
  return true;
}

// Sutherland-Hodgman against the half-plane <normal, x> <= offset.
inline Polygon clip_below(const Polygon& p, Vec2 normal, double offset) {
  Polygon out;
  const std::size_t n = p.size();
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = p[i], b = p[(i + 1) % n];
    const double da = dot(normal, a) - offset;
    const double db = dot(normal, b) - offset;
    if (da <= 0) out.push_back(a);
    if ((da < 0 && db > 0) || (da > 0 && db < 0)) {
      const double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

// Length of {<normal, x> = offset} inside the polygon (Cyrus-Beck on the line).
inline double chord_length(const Polygon& p, Vec2 normal, double offset) {
  const Vec2 base = offset * normal;
  const Vec2 dir{-normal.y, normal.x};
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = p[(i + 1) % n] - p[i];
    // inside: cross(e, x - p[i]) >= 0, x = base + s * dir
    const double c0 = cross(e, base - p[i]);
    const double c1 = cross(e, dir);
    if (c1 == 0.0) {
      if (c0 < 0) return 0.0;
      continue;
    }
    const double s = -c0 / c1;
    if (c1 > 0) lo = std::max(lo, s);
    else hi = std::min(hi, s);
  }
  return hi > lo ? hi - lo : 0.0;
}

// Rotating calipers over antipodal pairs of a CCW convex polygon.
inline double diameter(const Polygon& p) {
  const std::size_t n = p.size();
  if (n == 1) return 0.0;
  if (n == 2) return length(p[1] - p[0]);
  double best = 0.0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = p[(i + 1) % n] - p[i];
    while (cross(e, p[(j + 1) % n] - p[i]) > cross(e, p[j] - p[i])) j = (j + 1) % n;
    best = std::max({best, length(p[j] - p[i]), length(p[j] - p[(i + 1) % n])});
  }
  return best;
}

}  // namespace l1p::polygon
