#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace l1p {

// SplitMix64 finalizer. Used to derive independent stream seeds from a single
// user seed and a stream counter, so chunked Monte Carlo work is reproducible
// regardless of how the chunks are scheduled.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

  double uniform() { return unit_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }
  double normal() { return gauss_(engine_); }
  std::uint64_t index(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  // Uniform direction on the unit sphere in R^n.
  std::vector<double> direction(std::size_t n) {
    std::vector<double> d(n);
    double s = 0.0;
    do {
      s = 0.0;
      for (double& x : d) {
        x = gauss_(engine_);
        s += x * x;
      }
    } while (s < 1e-300);
    s = std::sqrt(s);
    for (double& x : d) x /= s;
    return d;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Sample mean with a batch-means standard error. Valid for correlated chains
// as long as batches are longer than the correlation time; for iid input it
// agrees with the naive estimate in expectation.
inline MeanEstimate batch_mean(std::span<const double> values, std::size_t batches = 32) {
  MeanEstimate out;
  const std::size_t n = values.size();
  if (n == 0) return out;
  double total = 0.0;
  for (double v : values) total += v;
  out.mean = total / static_cast<double>(n);
  if (n < 2 * batches) batches = n / 2;
  if (batches < 2) return out;
  const std::size_t len = n / batches;
  double ss = 0.0;
  for (std::size_t b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t i = b * len; i < (b + 1) * len; ++i) s += values[i];
    const double d = s / static_cast<double>(len) - out.mean;
    ss += d * d;
  }
  const double var_of_batch_mean = ss / static_cast<double>(batches - 1);
  out.std_error = std::sqrt(var_of_batch_mean / static_cast<double>(batches));
  return out;
}

}  // namespace l1p
