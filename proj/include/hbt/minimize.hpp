#pragma once

#include <cmath>
#include <utility>

namespace hbt {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search for the minimum of f on [lo, hi]. Deterministic:
/// fixed bracket update, no randomness, no derivative use. Returns the best
/// evaluated point, so the reported value never exceeds f at any probe.
template <typename F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi,
                                      double xtol = 1e-12, int max_iter = 200) {
  constexpr double inv_phi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
  if (hi < lo) std::swap(lo, hi);

  ScalarMinimum best{lo, f(lo), 1};
  const double f_hi = f(hi);
  ++best.evaluations;
  if (f_hi < best.value) {
    best.x = hi;
    best.value = f_hi;
  }

  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  best.evaluations += 2;
  auto consider = [&best](double x, double fx) {
    if (fx < best.value) {
      best.x = x;
      best.value = fx;
    }
  };
  consider(c, fc);
  consider(d, fd);

  for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
    ++best.evaluations;
  }
  return best;
}

}  // namespace hbt
