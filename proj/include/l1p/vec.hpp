#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "l1p/error.hpp"

namespace l1p {

using Point = std::vector<double>;

namespace vec {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline Point sub(std::span<const double> a, std::span<const double> b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Point add(std::span<const double> a, std::span<const double> b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// a + s * b
inline Point axpy(std::span<const double> a, double s, std::span<const double> b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
  return r;
}

inline Point scaled(std::span<const double> a, double s) {
  Point r(a.begin(), a.end());
  for (double& x : r) x *= s;
  return r;
}

inline bool all_finite(std::span<const double> a) {
  for (double x : a)
    if (!std::isfinite(x)) return false;
  return true;
}

inline void require_same_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got)
    throw Error(ErrorCode::dimension_mismatch,
                std::string(what) + ": expected dimension " + std::to_string(expected) +
                    ", got " + std::to_string(got));
}

// Orthonormal basis of the complement of a unit vector, by Gram-Schmidt on the
// coordinate axes.
inline std::vector<Point> orthonormal_complement(std::span<const double> unit) {
  const std::size_t n = unit.size();
  std::vector<Point> basis;
  basis.reserve(n > 0 ? n - 1 : 0);
  std::vector<Point> accepted{Point(unit.begin(), unit.end())};
  for (std::size_t axis = 0; axis < n && basis.size() + 1 < n; ++axis) {
    Point e(n, 0.0);
    e[axis] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const Point& q : accepted) {
        const double c = dot(e, q);
        for (std::size_t i = 0; i < n; ++i) e[i] -= c * q[i];
      }
    const double len = norm(e);
    if (len < 1e-6) continue;
    for (double& x : e) x /= len;
    accepted.push_back(e);
    basis.push_back(std::move(e));
  }
  return basis;
}

}  // namespace vec
}  // namespace l1p
