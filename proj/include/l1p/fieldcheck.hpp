#pragma once

// Planar verification harness: mollified two-level fields across a cut and
// their discrete L^1 Poincare ratio ||u - mean u||_1 / ||grad u||_1.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "l1p/constants.hpp"
#include "l1p/cuts.hpp"
#include "l1p/error.hpp"
#include "l1p/geometry.hpp"

namespace l1p::fieldcheck {

using geometry::ConvexBody;

// Cell-centered lattice over the body's bounding box.
struct Field2D {
  std::size_t nx = 0, ny = 0;
  double x0 = 0.0, y0 = 0.0;
  double hx = 0.0, hy = 0.0;
  std::vector<std::uint8_t> inside;  // row-major, index j * nx + i
  std::vector<double> values;

  std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }
  double cx(std::size_t i) const { return x0 + (static_cast<double>(i) + 0.5) * hx; }
  double cy(std::size_t j) const { return y0 + (static_cast<double>(j) + 0.5) * hy; }
};

struct GridResolution {
  std::size_t nx = 0;
  std::size_t ny = 0;
};

// `cells` along the longer side of the bounding box, proportionally many
// (at least `min_cells`) along the shorter one.
inline GridResolution resolution_for(const ConvexBody& body, std::size_t cells, std::size_t min_cells = 16) {
  const double wx = body.bbox_upper()[0] - body.bbox_lower()[0];
  const double wy = body.bbox_upper()[1] - body.bbox_lower()[1];
  auto scaled = [&](double ratio) {
    return std::max(min_cells, static_cast<std::size_t>(std::llround(static_cast<double>(cells) * ratio)));
  };
  return wx >= wy ? GridResolution{cells, scaled(wy / wx)} : GridResolution{scaled(wx / wy), cells};
}

// u = clamp(signed distance to the cut / (width / 2), -1, 1) on inside cells:
// -1 on S, +1 on the complement, linear across a band of total width `width`.
inline Field2D mollified_step_field(const ConvexBody& body, const cuts::HyperplaneCut& cut, double width,
                                    GridResolution res) {
  if (body.dimension() != 2) throw Error(ErrorCode::invalid_dimension, "field checks are planar");
  vec::require_same_dim(2, cut.normal.size(), "cut normal");
  if (res.nx < 2 || res.ny < 2) throw Error(ErrorCode::invalid_argument, "grid needs at least 2 x 2 cells");
  const auto [lo, hi] = body.support(cut.normal);
  if (!(width > 0.0)) throw Error(ErrorCode::invalid_argument, "mollification width must be positive");
  if (width > (hi - lo) * (1.0 + 1e-12))
    throw Error(ErrorCode::invalid_argument, "mollification width exceeds the body's extent along the normal");

  Field2D f;
  f.nx = res.nx;
  f.ny = res.ny;
  f.x0 = body.bbox_lower()[0];
  f.y0 = body.bbox_lower()[1];
  f.hx = (body.bbox_upper()[0] - f.x0) / static_cast<double>(res.nx);
  f.hy = (body.bbox_upper()[1] - f.y0) / static_cast<double>(res.ny);
  f.inside.assign(f.nx * f.ny, 0);
  f.values.assign(f.nx * f.ny, 0.0);
  const double half = 0.5 * width;
  for (std::size_t j = 0; j < f.ny; ++j)
    for (std::size_t i = 0; i < f.nx; ++i) {
      const Point c{f.cx(i), f.cy(j)};
      const std::size_t k = f.index(i, j);
      if (!geometry::contains(body, c)) continue;
      f.inside[k] = 1;
      f.values[k] = std::clamp((vec::dot(cut.normal, c) - cut.offset) / half, -1.0, 1.0);
    }
  return f;
}

// Mask-average removed, central differences in the interior, one-sided next
// to excluded cells, zero when both neighbours are excluded.
inline double l1_ratio(const Field2D& f) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < f.values.size(); ++k)
    if (f.inside[k]) {
      sum += f.values[k];
      ++count;
    }
  if (count == 0) throw Error(ErrorCode::invalid_argument, "field has no inside cells");
  const double mean = sum / static_cast<double>(count);
  const double area = f.hx * f.hy;

  auto in = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
    return i >= 0 && j >= 0 && i < std::ptrdiff_t(f.nx) && j < std::ptrdiff_t(f.ny) &&
           f.inside[f.index(std::size_t(i), std::size_t(j))];
  };
  auto val = [&](std::ptrdiff_t i, std::ptrdiff_t j) { return f.values[f.index(std::size_t(i), std::size_t(j))]; };
  auto derivative = [&](std::ptrdiff_t i, std::ptrdiff_t j, std::ptrdiff_t di, std::ptrdiff_t dj, double h) {
    const bool fwd = in(i + di, j + dj), bwd = in(i - di, j - dj);
    if (fwd && bwd) return (val(i + di, j + dj) - val(i - di, j - dj)) / (2.0 * h);
    if (fwd) return (val(i + di, j + dj) - val(i, j)) / h;
    if (bwd) return (val(i, j) - val(i - di, j - dj)) / h;
    return 0.0;
  };

  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < f.ny; ++j)
    for (std::size_t i = 0; i < f.nx; ++i) {
      if (!f.inside[f.index(i, j)]) continue;
      const auto ii = std::ptrdiff_t(i), jj = std::ptrdiff_t(j);
      num += std::abs(f.values[f.index(i, j)] - mean) * area;
      den += std::hypot(derivative(ii, jj, 1, 0, f.hx), derivative(ii, jj, 0, 1, f.hy)) * area;
    }
  if (!(den > 0.0)) throw Error(ErrorCode::invalid_argument, "field has zero gradient");
  return num / den;
}

// Allowed excess of a measured ratio over a continuum upper bound.
inline double discretization_slack(const Field2D& f, double width) { return 10.0 * std::max({f.hx, f.hy, width}); }

struct SweepRow {
  double eps = 0.0;
  double width = 0.0;
  double ratio = 0.0;
  double diameter = 0.0;
  double acosta_duran = 0.0;
  double slack = 0.0;
  std::size_t nx = 0, ny = 0;
};

// Rectangles [0,1] x [0,eps] cut at x = 1/2, for every (eps, width) pair.
// An empty width list means width = eps.
inline std::vector<SweepRow> sweep_sharpness(const std::vector<double>& eps_list, const std::vector<double>& widths,
                                             std::size_t grid) {
  std::vector<SweepRow> rows;
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw Error(ErrorCode::invalid_argument, "rectangle thickness must be positive");
    const ConvexBody rect = ConvexBody::box({0.0, 0.0}, {1.0, eps});
    const cuts::HyperplaneCut cut = cuts::make_cut({1.0, 0.0}, 0.5);
    const GridResolution res = resolution_for(rect, grid);
    const std::vector<double> ws = widths.empty() ? std::vector<double>{eps} : widths;
    for (double w : ws) {
      const Field2D f = mollified_step_field(rect, cut, w, res);
      SweepRow row;
      row.eps = eps;
      row.width = w;
      row.ratio = l1_ratio(f);
      row.diameter = geometry::diameter(rect);
      row.acosta_duran = constants::acosta_duran_constant(row.diameter);
      row.slack = discretization_slack(f, w);
      row.nx = res.nx;
      row.ny = res.ny;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace l1p::fieldcheck
