#include "hbt/optics.hpp"

#include <cmath>
#include <stdexcept>

namespace hbt {
namespace detail {

double j1_power_series(double y) {
  // J1(y) = sum_m (-1)^m (y/2)^(2m+1) / (m! (m+1)!)
  const double q = 0.25 * y * y;
  double term = 0.5 * y;
  double sum = term;
  for (int m = 0; m < 64; ++m) {
    term *= -q / ((m + 1.0) * (m + 2.0));
    sum += term;
    if (std::abs(term) < 1e-20 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

double j1_asymptotic(double y) {
  // Hankel expansion: J1(y) = sqrt(2/(pi y)) [P cos(chi) - Q sin(chi)],
  // chi = y - 3 pi / 4, with
  //   P = sum_k (-1)^k s_{2k},  Q = sum_k (-1)^k s_{2k+1},
  //   s_n = prod_{i=1..n} (4 - (2i-1)^2) / (n! (8y)^n).
  // Truncated at the smallest term (series is asymptotic).
  const double inv8y = 1.0 / (8.0 * y);
  double s = 1.0;
  double p_sum = 1.0;
  double q_sum = 0.0;
  double sign_p = -1.0;
  double sign_q = 1.0;
  double prev = 1.0;
  for (int n = 1; n <= 30; ++n) {
    const double odd = 2.0 * n - 1.0;
    s *= (4.0 - odd * odd) * inv8y / n;
    if (std::abs(s) >= prev) break;
    prev = std::abs(s);
    if (n % 2 == 0) {
      p_sum += sign_p * s;
      sign_p = -sign_p;
    } else {
      q_sum += sign_q * s;
      sign_q = -sign_q;
    }
    if (prev < 1e-19) break;
  }
  const double chi = y - 0.75 * M_PI;
  return std::sqrt(2.0 / (M_PI * y)) * (p_sum * std::cos(chi) - q_sum * std::sin(chi));
}

}  // namespace detail

double bessel_j1(double y) {
  const double w = std::abs(y);
  const double value =
      w < detail::kJ1SeriesCutoff ? detail::j1_power_series(w) : detail::j1_asymptotic(w);
  return y < 0.0 ? -value : value;
}

double jinc(double y) {
  const double w = std::abs(y);
  if (w < 1e-8) {
    return 1.0 - w * w / 8.0;
  }
  return 2.0 * bessel_j1(w) / w;
}

double gaussian_kernel(double y) { return std::exp(-y * y); }

double sinc_kernel(double y) {
  const double w = std::abs(y);
  if (w < 1e-8) {
    return 1.0 - w * w / 6.0;
  }
  return std::sin(w) / w;
}

void HbtParams::validate() const {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw std::invalid_argument("nbar must be finite and >= 0");
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("kappa must be finite and > 0");
  }
}

double amplitude_correlation(const HbtParams& p, const ScanPoint& s) {
  return amplitude_correlation(p, s, &jinc);
}

double amplitude_correlation(const HbtParams& p, const ScanPoint& s,
                             CorrelationKernel kernel) {
  p.validate();
  if (!std::isfinite(s.x)) {
    throw std::invalid_argument("scan point must be finite");
  }
  return kernel(p.kappa * std::abs(s.x));
}

StandardForm covariance_at(const HbtParams& p, const ScanPoint& s) {
  const double h = amplitude_correlation(p, s);
  const double diag = 1.0 + 2.0 * p.nbar;
  const double off = 2.0 * p.nbar * h;
  return StandardForm{diag, diag, off, off};
}

double intensity_correlation_minus_one(const HbtParams& p, const ScanPoint& s) {
  const double h = amplitude_correlation(p, s);
  return h * h;
}

}  // namespace hbt
