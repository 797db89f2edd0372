#pragma once

// Sharp weighted L^1 Poincare constants on [0, 1]:
//
//   int |f| nu <= C int |f'| nu
//
// for f(0) = 0 (dirichlet) and for int f nu = 0 (mean_zero). The extremizers
// are single jumps, so each constant is the maximum over the jump location z
// of an explicit ratio; a discretized brute-force oracle checks the closed
// forms independently.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "l1p/error.hpp"
#include "l1p/golden.hpp"
#include "l1p/random.hpp"

namespace l1p::interval {

// ---------------------------------------------------------------------------
// Weights

struct ConstantWeight {
  double value = 1.0;
};
struct ExponentialWeight {
  double rate = 1.0;  // e^(rate x)
};
struct GaussianWeight {
  double sigma = 1.0;  // e^(-x^2 / (2 sigma^2))
};
struct TabulatedWeight {
  std::vector<double> x;  // strictly increasing, x.front() == 0, x.back() == 1
  std::vector<double> values;
};

class WeightSpec {
 public:
  using Kind = std::variant<ConstantWeight, ExponentialWeight, GaussianWeight, TabulatedWeight>;

  static WeightSpec constant(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::invalid_argument, "constant weight must be positive");
    return WeightSpec(ConstantWeight{c});
  }
  static WeightSpec exponential(double a) {
    if (!std::isfinite(a)) throw Error(ErrorCode::invalid_argument, "exponential rate must be finite");
    return WeightSpec(ExponentialWeight{a});
  }
  static WeightSpec gaussian(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
      throw Error(ErrorCode::invalid_argument, "gaussian width must be positive");
    return WeightSpec(GaussianWeight{sigma});
  }
  static WeightSpec tabulated(std::vector<double> x, std::vector<double> values) {
    if (x.size() != values.size() || x.size() < 2)
      throw Error(ErrorCode::invalid_argument, "tabulated weight needs at least two (x, value) pairs");
    if (x.front() != 0.0 || x.back() != 1.0)
      throw Error(ErrorCode::invalid_argument, "tabulated weight must have nodes at x = 0 and x = 1");
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
      if (!(x[i] < x[i + 1])) throw Error(ErrorCode::invalid_argument, "tabulated nodes must increase");
    for (double v : values)
      if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "non-finite tabulated weight value");
    WeightSpec w(TabulatedWeight{std::move(x), std::move(values)});
    for (int i = 0; i <= 10000; ++i)
      if (!(w(i / 10000.0) > 0.0)) throw Error(ErrorCode::invalid_argument, "weight must be positive on [0, 1]");
    for (double v : std::get<TabulatedWeight>(w.kind_).values)
      if (!(v > 0.0)) throw Error(ErrorCode::invalid_argument, "weight must be positive on [0, 1]");
    return w;
  }

  // Same shape, multiplied by c > 0.
  WeightSpec scaled(double c) const {
    if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::invalid_argument, "scale must be positive");
    if (const auto* t = std::get_if<TabulatedWeight>(&kind_)) {
      std::vector<double> vs = t->values;
      for (double& v : vs) v *= c;
      return tabulated(t->x, std::move(vs));
    }
    WeightSpec w = *this;
    w.factor_ *= c;
    return w;
  }

  double operator()(double x) const {
    return factor_ * std::visit(
                         [&](const auto& k) -> double {
                           using T = std::decay_t<decltype(k)>;
                           if constexpr (std::is_same_v<T, ConstantWeight>) return k.value;
                           else if constexpr (std::is_same_v<T, ExponentialWeight>) return std::exp(k.rate * x);
                           else if constexpr (std::is_same_v<T, GaussianWeight>)
                             return std::exp(-x * x / (2.0 * k.sigma * k.sigma));
                           else {
                             const auto it = std::upper_bound(k.x.begin(), k.x.end(), x);
                             if (it == k.x.begin()) return k.values.front();
                             if (it == k.x.end()) return k.values.back();
                             const std::size_t i = static_cast<std::size_t>(it - k.x.begin()) - 1;
                             const double s = (x - k.x[i]) / (k.x[i + 1] - k.x[i]);
                             return k.values[i] + s * (k.values[i + 1] - k.values[i]);
                           }
                         },
                         kind_);
  }

  const Kind& kind() const { return kind_; }

  std::string describe() const {
    return std::visit(
        [&](const auto& k) -> std::string {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, ConstantWeight>) return "constant(" + std::to_string(k.value) + ")";
          else if constexpr (std::is_same_v<T, ExponentialWeight>) return "exponential(" + std::to_string(k.rate) + ")";
          else if constexpr (std::is_same_v<T, GaussianWeight>) return "gaussian(" + std::to_string(k.sigma) + ")";
          else return "tabulated(" + std::to_string(k.x.size()) + " nodes)";
        },
        kind_);
  }

 private:
  explicit WeightSpec(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
  double factor_ = 1.0;
};

// int_a^b nu: exact trapezoids for tabulated weights, adaptive Gauss-Kronrod
// otherwise.
inline double cumulative_weight(const WeightSpec& w, double a, double b) {
  if (!(a >= 0.0 && b <= 1.0 && a <= b))
    throw Error(ErrorCode::invalid_argument, "cumulative_weight needs 0 <= a <= b <= 1");
  if (a == b) return 0.0;
  if (const auto* t = std::get_if<TabulatedWeight>(&w.kind())) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < t->x.size(); ++i) {
      const double lo = std::max(a, t->x[i]), hi = std::min(b, t->x[i + 1]);
      if (hi > lo) s += 0.5 * (hi - lo) * (w(lo) + w(hi));
    }
    return s;
  }
  return boost::math::quadrature::gauss_kronrod<double, 21>::integrate([&](double x) { return w(x); }, a, b, 6,
                                                                        1e-12);
}

// ---------------------------------------------------------------------------
// Sharp constants

enum class Mode { dirichlet, mean_zero };

inline const char* to_string(Mode m) { return m == Mode::dirichlet ? "dirichlet" : "mean_zero"; }

struct ClosedInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct SharpConstantResult {
  double constant = 0.0;
  double argmax_x = 0.0;
  Mode mode = Mode::dirichlet;
  std::vector<ClosedInterval> near_extremizer_set;
  double epsilon = 0.0;
};

inline constexpr std::size_t kDefaultGrid = 4096;
inline constexpr double kDefaultEpsilon = 0.01;

// Precomputed cumulative weights on a uniform grid; evaluates the jump-ratio
// objective at any x in [0, 1].
class Objective {
 public:
  Objective(WeightSpec w, Mode mode, std::size_t grid = kDefaultGrid) : w_(std::move(w)), mode_(mode), n_(grid) {
    prefix_.assign(n_, 0.0);
    for (std::size_t i = 1; i < n_; ++i) prefix_[i] = prefix_[i - 1] + cumulative_weight(w_, x_at(i - 1), x_at(i));
    total_ = prefix_.back();
  }

  double x_at(std::size_t i) const {
    return i + 1 == n_ ? 1.0 : static_cast<double>(i) / static_cast<double>(n_ - 1);
  }
  std::size_t grid_size() const { return n_; }
  const WeightSpec& weight() const { return w_; }
  Mode mode() const { return mode_; }
  double total() const { return total_; }

  // int_0^x nu
  double left_mass(double x) const {
    const double pos = x * static_cast<double>(n_ - 1);
    std::size_t i = std::min(n_ - 1, static_cast<std::size_t>(std::floor(pos)));
    return prefix_[i] + cumulative_weight(w_, x_at(i), std::max(x, x_at(i)));
  }

  double operator()(double x) const {
    const double left = left_mass(x);
    const double right = total_ - left;
    if (mode_ == Mode::dirichlet) return right / w_(x);
    return 2.0 * left * right / (w_(x) * total_);
  }

  double at_grid(std::size_t i) const {
    const double left = prefix_[i], right = total_ - left;
    const double nu = w_(x_at(i));
    if (mode_ == Mode::dirichlet) return right / nu;
    return 2.0 * left * right / (nu * total_);
  }

 private:
  WeightSpec w_;
  Mode mode_;
  std::size_t n_;
  std::vector<double> prefix_;
  double total_ = 0.0;
};

namespace detail {

// Refines the boundary between x_in (objective >= level) and x_out by bisection.
inline double bisect_level(const Objective& obj, double level, double x_in, double x_out) {
  for (int it = 0; it < 200 && std::abs(x_out - x_in) > 1e-11; ++it) {
    const double mid = 0.5 * (x_in + x_out);
    if (obj(mid) >= level) x_in = mid;
    else x_out = mid;
  }
  return x_in;
}

inline std::pair<double, double> maximize(const Objective& obj) {
  const std::size_t n = obj.grid_size();
  std::vector<double> g(n);
  double gmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = obj.at_grid(i);
    gmax = std::max(gmax, g[i]);
  }
  std::size_t best = 0;
  while (g[best] < gmax - 1e-9 * std::abs(gmax)) ++best;
  const double lo = obj.x_at(best == 0 ? 0 : best - 1);
  const double hi = obj.x_at(std::min(n - 1, best + 1));
  const ScalarMax m = golden_section_max([&](double x) { return obj(x); }, lo, hi, 1e-12);
  // the grid point itself is a candidate too
  const double at = obj(obj.x_at(best));
  if (at >= m.value) return {obj.x_at(best), at};
  return {m.x, m.value};
}

}  // namespace detail

// {x : objective(x) >= (1 - eps) C} as closed intervals; `argmax` is always
// included so the set is never empty.
inline std::vector<ClosedInterval> near_extremizer_set(const Objective& obj, double constant, double argmax,
                                                       double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::invalid_argument, "epsilon must lie in (0, 1)");
  const double level = (1.0 - epsilon) * constant;
  std::vector<double> xs;
  xs.reserve(obj.grid_size() + 1);
  for (std::size_t i = 0; i < obj.grid_size(); ++i) xs.push_back(obj.x_at(i));
  xs.insert(std::upper_bound(xs.begin(), xs.end(), argmax), argmax);
  std::vector<bool> in(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) in[i] = xs[i] == argmax || obj(xs[i]) >= level;

  std::vector<ClosedInterval> out;
  for (std::size_t i = 0; i < xs.size();) {
    if (!in[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < xs.size() && in[j + 1]) ++j;
    const double lo = i == 0 ? xs[0] : detail::bisect_level(obj, level, xs[i], xs[i - 1]);
    const double hi = j + 1 == xs.size() ? xs[j] : detail::bisect_level(obj, level, xs[j], xs[j + 1]);
    out.push_back({lo, hi});
    i = j + 1;
  }
  return out;
}

inline SharpConstantResult sharp_constant(const WeightSpec& w, Mode mode, double epsilon = kDefaultEpsilon,
                                          std::size_t grid = kDefaultGrid) {
  const Objective obj(w, mode, grid);
  const auto [x0, c] = detail::maximize(obj);
  if (!(c > 0.0)) throw InvariantViolation("sharp constant is not positive");
  return {c, x0, mode, near_extremizer_set(obj, c, x0, epsilon), epsilon};
}

// max_x (1/nu(x)) int_x^1 nu
inline SharpConstantResult dirichlet_constant(const WeightSpec& w, double epsilon = kDefaultEpsilon) {
  return sharp_constant(w, Mode::dirichlet, epsilon);
}

// max_x (2/nu(x)) (int_0^x nu)(int_x^1 nu) / int_0^1 nu
inline SharpConstantResult meanzero_constant(const WeightSpec& w, double epsilon = kDefaultEpsilon) {
  return sharp_constant(w, Mode::mean_zero, epsilon);
}

inline std::vector<ClosedInterval> near_extremizer_set(const WeightSpec& w, Mode mode, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::invalid_argument, "epsilon must lie in (0, 1)");
  return sharp_constant(w, mode, epsilon).near_extremizer_set;
}

// Ratio attained by the jump at z: 1_{(z,1]} in dirichlet mode, and in
// mean_zero mode the two-level step with vanishing weighted mean.
inline double heaviside_ratio(const WeightSpec& w, double z, Mode mode) {
  if (!(z > 0.0 && z < 1.0)) throw Error(ErrorCode::invalid_argument, "jump location must lie in (0, 1)");
  const double right = cumulative_weight(w, z, 1.0);
  if (mode == Mode::dirichlet) return right / w(z);
  const double left = cumulative_weight(w, 0.0, z);
  return 2.0 * left * right / (w(z) * (left + right));
}

// ---------------------------------------------------------------------------
// Grid functions and the brute-force oracle

struct GridFunction {
  std::vector<double> values;  // on x_i = i / (n - 1)

  explicit GridFunction(std::vector<double> v) : values(std::move(v)) {
    if (values.size() < 2) throw Error(ErrorCode::invalid_argument, "grid function needs at least two points");
    for (double x : values)
      if (!std::isfinite(x)) throw Error(ErrorCode::invalid_argument, "non-finite grid function value");
  }
  std::size_t n_points() const { return values.size(); }
};

// g_i = max_{j <= i} |f_j|
inline GridFunction monotone_envelope(const GridFunction& f) {
  std::vector<double> g(f.n_points());
  double run = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    run = std::max(run, std::abs(f.values[i]));
    g[i] = run;
  }
  return GridFunction(std::move(g));
}

// Weights of the discrete functional: point masses nu(x_i) dx for |f| and
// midpoint weights nu(x_{i+1/2}) on cell differences for |f'|.
class DiscreteWeights {
 public:
  DiscreteWeights(const WeightSpec& w, std::size_t n) : mass_(n), mid_(n - 1) {
    const double dx = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) mass_[i] = w(static_cast<double>(i) * dx) * dx;
    for (std::size_t i = 0; i + 1 < n; ++i) mid_[i] = w((static_cast<double>(i) + 0.5) * dx);
  }
  std::size_t size() const { return mass_.size(); }
  const std::vector<double>& mass() const { return mass_; }
  const std::vector<double>& mid() const { return mid_; }

  double weighted_l1(std::span<const double> f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::abs(f[i]) * mass_[i];
    return s;
  }
  double weighted_variation(std::span<const double> f) const {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) s += std::abs(f[i + 1] - f[i]) * mid_[i];
    return s;
  }
  double ratio(std::span<const double> f) const { return weighted_l1(f) / weighted_variation(f); }

  void remove_weighted_mean(std::vector<double>& f) const {
    double s = 0.0, m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      s += f[i] * mass_[i];
      m += mass_[i];
    }
    for (double& x : f) x -= s / m;
  }

 private:
  std::vector<double> mass_;
  std::vector<double> mid_;
};

struct OracleResult {
  double max_ratio = 0.0;
  double step_max = 0.0;       // exhaustive single jumps
  double staircase_max = 0.0;  // random nonnegative nondecreasing
  double smooth_max = 0.0;     // random smooth
  std::size_t functions_tested = 0;
};

// Empirical supremum of the discrete ratio over every single jump, `trials`
// random staircases and `trials` random smooth functions, each made
// admissible (f_0 = 0, or vanishing weighted mean).
inline OracleResult oracle_max_ratio(const WeightSpec& w, Mode mode, std::size_t n_points, std::size_t trials,
                                     std::uint64_t seed) {
  if (n_points < 64) throw Error(ErrorCode::invalid_argument, "oracle needs at least 64 grid points");
  const DiscreteWeights dw(w, n_points);
  const auto& mass = dw.mass();
  const auto& mid = dw.mid();
  OracleResult out;

  // single jumps in closed form over prefix sums
  double total = 0.0;
  for (double m : mass) total += m;
  double left = 0.0;
  for (std::size_t i = 0; i + 1 < n_points; ++i) {
    left += mass[i];
    const double right = total - left;
    const double r = mode == Mode::dirichlet ? right / mid[i] : 2.0 * left * right / (total * mid[i]);
    out.step_max = std::max(out.step_max, r);
    ++out.functions_tested;
  }

  auto admissible = [&](std::vector<double>& f) {
    if (mode == Mode::dirichlet) {
      const double f0 = f[0];
      for (double& x : f) x -= f0;
    } else {
      dw.remove_weighted_mean(f);
    }
  };

  std::vector<double> f(n_points);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(seed, 2 * t);
    std::fill(f.begin(), f.end(), 0.0);
    const std::size_t jumps = 1 + rng.index(8);
    for (std::size_t k = 0; k < jumps; ++k) {
      const std::size_t cell = rng.index(n_points - 1);
      const double height = rng.uniform() + 1e-3;
      for (std::size_t i = cell + 1; i < n_points; ++i) f[i] += height;
    }
    admissible(f);
    if (dw.weighted_variation(f) > 0.0) out.staircase_max = std::max(out.staircase_max, dw.ratio(f));
    ++out.functions_tested;
  }

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(seed, 2 * t + 1);
    const std::size_t modes = 1 + rng.index(6);
    std::vector<double> amp(modes), freq(modes), phase(modes);
    for (std::size_t k = 0; k < modes; ++k) {
      freq[k] = static_cast<double>(1 + rng.index(12));
      amp[k] = rng.normal() / freq[k];
      phase[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    for (std::size_t i = 0; i < n_points; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(n_points - 1);
      double v = 0.0;
      for (std::size_t k = 0; k < modes; ++k) v += amp[k] * std::sin(freq[k] * std::numbers::pi * x + phase[k]);
      f[i] = v;
    }
    admissible(f);
    if (dw.weighted_variation(f) > 0.0) out.smooth_max = std::max(out.smooth_max, dw.ratio(f));
    ++out.functions_tested;
  }
  out.max_ratio = std::max({out.step_max, out.staircase_max, out.smooth_max});
  return out;
}

struct ObjectiveSample {
  double x = 0.0;
  double objective = 0.0;
  bool in_near_extremizer_set = false;
};

// Objective on a uniform grid, for plotting.
inline std::vector<ObjectiveSample> objective_table(const WeightSpec& w, const SharpConstantResult& r,
                                                    std::size_t points = 1001) {
  const Objective obj(w, r.mode);
  std::vector<ObjectiveSample> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(points - 1);
    bool in = false;
    for (const auto& iv : r.near_extremizer_set) in = in || iv.contains(x);
    out.push_back({x, obj(x), in});
  }
  return out;
}

}  // namespace l1p::interval
