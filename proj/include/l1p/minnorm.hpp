#pragma once

// Wolfe's minimum-norm-point algorithm: the point of the convex hull of a
// finite set closest to the origin. Used as the membership oracle for
// general-dimension vertex polytopes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "l1p/vec.hpp"

namespace l1p::minnorm {

namespace detail {

// Solves the small dense system a * x = b in place by partial pivoting.
// Returns false if the matrix is numerically singular.
inline bool solve(std::vector<std::vector<double>>& a, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-14) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * b[c];
    b[i] = s / a[i][i];
  }
  return true;
}

// Affine minimizer of the norm over the affine hull of the selected points:
// weights summing to one.
inline bool affine_minimizer(const std::vector<Point>& pts, const std::vector<std::size_t>& sel,
                             std::vector<double>& weights) {
  const std::size_t k = sel.size();
  std::vector<std::vector<double>> a(k + 1, std::vector<double>(k + 1, 0.0));
  std::vector<double> b(k + 1, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = vec::dot(pts[sel[i]], pts[sel[j]]);
    a[i][k] = 1.0;
    a[k][i] = 1.0;
  }
  b[k] = 1.0;
  if (!solve(a, b)) return false;
  weights.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(k));
  return true;
}

}  // namespace detail

// Distance from `target` to conv(points).
inline double distance_to_hull(std::span<const Point> points, std::span<const double> target) {
  std::vector<Point> pts;
  pts.reserve(points.size());
  double scale = 0.0;
  for (const Point& p : points) {
    pts.push_back(vec::sub(p, target));
    scale = std::max(scale, vec::dot(pts.back(), pts.back()));
  }
  const double eps = 1e-13 * std::max(scale, 1e-300);

  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (vec::dot(pts[i], pts[i]) < vec::dot(pts[start], pts[start])) start = i;
  std::vector<std::size_t> sel{start};
  std::vector<double> lambda{1.0};
  Point x = pts[start];

  for (int major = 0; major < 1000; ++major) {
    const double xx = vec::dot(x, x);
    if (xx <= eps) return 0.0;
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double v = vec::dot(x, pts[i]);
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (best >= xx - eps) break;
    if (std::find(sel.begin(), sel.end(), j) != sel.end()) break;
    sel.push_back(j);
    lambda.push_back(0.0);

    for (int minor = 0; minor < 1000; ++minor) {
      std::vector<double> mu;
      if (!detail::affine_minimizer(pts, sel, mu)) break;
      bool interior = true;
      for (double m : mu)
        if (m <= 1e-14) interior = false;
      if (interior) {
        lambda = mu;
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu[i] <= 1e-14) theta = std::min(theta, lambda[i] / (lambda[i] - mu[i]));
      for (std::size_t i = 0; i < mu.size(); ++i) lambda[i] += theta * (mu[i] - lambda[i]);
      std::vector<std::size_t> keep_sel;
      std::vector<double> keep_lambda;
      for (std::size_t i = 0; i < sel.size(); ++i)
        if (lambda[i] > 1e-14) {
          keep_sel.push_back(sel[i]);
          keep_lambda.push_back(lambda[i]);
        }
      sel.swap(keep_sel);
      lambda.swap(keep_lambda);
    }
    double total = 0.0;
    for (double l : lambda) total += l;
    x.assign(x.size(), 0.0);
    for (std::size_t i = 0; i < sel.size(); ++i)
      for (std::size_t c = 0; c < x.size(); ++c) x[c] += lambda[i] / total * pts[sel[i]][c];
  }
  return vec::norm(x);
}

}  // namespace l1p::minnorm
