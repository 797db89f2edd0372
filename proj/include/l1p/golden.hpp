#pragma once

#include <cmath>
#include <utility>

namespace l1p {

struct ScalarMax {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section maximization of a unimodal function on [lo, hi]. The interval
// endpoints are compared against the interior optimum, so a maximum sitting on
// the boundary is returned exactly.
template <class F>
ScalarMax golden_section_max(F&& f, double lo, double hi, double tol = 1e-11, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  ScalarMax best{fc >= fd ? c : d, fc >= fd ? fc : fd};
  // endpoints: strict improvement only, lower endpoint first
  const double flo = f(lo);
  if (flo >= best.value) best = {lo, flo};
  const double fhi = f(hi);
  if (fhi > best.value) best = {hi, fhi};
  return best;
}

}  // namespace l1p
