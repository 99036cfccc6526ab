#include "hbt/weaklight.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hbt {
namespace detail {

double g_minus_one(double nbar, double corr) {
  const double num = 2.0 * nbar * corr;
  const double diag = 1.0 + 2.0 * nbar;
  return num * num / (diag * diag - num * num);
}

double g_power_form_minus_one(double nbar, double corr) {
  const double w = 4.0 * nbar * nbar / (1.0 + 4.0 * nbar);
  return std::expm1(corr * corr * std::log1p(w));
}

}  // namespace detail

namespace {

void check_domain(double nbar, double corr) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw std::domain_error("nbar must be finite and >= 0");
  }
  if (!(std::abs(corr) <= 1.0)) {
    throw std::domain_error("correlation must satisfy |h| <= 1");
  }
}

}  // namespace

double g_function(double nbar, double corr) {
  check_domain(nbar, corr);
  const double num = 2.0 * nbar * corr;
  const double diag = 1.0 + 2.0 * nbar;
  const double denom = diag * diag - num * num;
  if (!(denom > 0.0)) {
    throw std::domain_error("g-function denominator is not positive");
  }
  return 1.0 + detail::g_minus_one(nbar, corr);
}

double normalized_mutual_information(double nbar, double corr) {
  check_domain(nbar, corr);
  if (nbar == 0.0) {
    throw std::domain_error("normalized mutual information is 0/0 at nbar = 0");
  }
  return std::log1p(detail::g_minus_one(nbar, corr)) /
         std::log1p(detail::g_minus_one(nbar, 1.0));
}

SeriesMatchReport taylor_match_order(double corr, int orders) {
  if (!(std::abs(corr) <= 1.0)) {
    throw std::domain_error("correlation must satisfy |h| <= 1");
  }
  if (orders < 4) {
    throw std::invalid_argument("orders must be >= 4");
  }
  const double h2 = corr * corr;
  const int n = orders;

  // g(nbar; h) = 1 + 4 h^2 nbar^2 / (1 + 4 nbar + 4 (1 - h^2) nbar^2):
  // expand the reciprocal by linear recurrence.
  std::vector<double> recip(static_cast<size_t>(n) + 1, 0.0);
  recip[0] = 1.0;
  const double s = 1.0 - h2;
  for (int k = 1; k <= n; ++k) {
    double v = -4.0 * recip[k - 1];
    if (k >= 2) v -= 4.0 * s * recip[k - 2];
    recip[k] = v;
  }
  std::vector<double> cg(static_cast<size_t>(n) + 1, 0.0);
  cg[0] = 1.0;
  for (int k = 2; k <= n; ++k) cg[k] = 4.0 * h2 * recip[k - 2];

  // g(nbar; 1)^(h^2) = (1 + w)^(h^2) with w = 4 nbar^2 / (1 + 4 nbar):
  // w[k] = 4 (-4)^(k-2) for k >= 2, then the power recurrence
  // m P[m] = sum_k (k (alpha + 1) - m) w[k] P[m-k].
  std::vector<double> w(static_cast<size_t>(n) + 1, 0.0);
  double wk = 4.0;
  for (int k = 2; k <= n; ++k) {
    w[k] = wk;
    wk *= -4.0;
  }
  std::vector<double> cgf(static_cast<size_t>(n) + 1, 0.0);
  cgf[0] = 1.0;
  const double alpha = h2;
  for (int m = 1; m <= n; ++m) {
    double acc = 0.0;
    for (int k = 2; k <= m; ++k) {
      acc += (k * (alpha + 1.0) - m) * w[k] * cgf[m - k];
    }
    cgf[m] = acc / m;
  }

  SeriesMatchReport report;
  report.coefficients.reserve(static_cast<size_t>(n) + 1);
  report.order_matched = -1;
  bool still_matching = true;
  for (int k = 0; k <= n; ++k) {
    report.coefficients.push_back({k, cg[k], cgf[k]});
    const double scale = std::max({1.0, std::abs(cg[k]), std::abs(cgf[k])});
    if (still_matching && std::abs(cg[k] - cgf[k]) <= 1e-8 * scale) {
      report.order_matched = k;
    } else {
      still_matching = false;
    }
  }

  static constexpr double kResidualGrid[] = {1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
  for (double nb : kResidualGrid) {
    const double diff = std::abs(detail::g_minus_one(nb, corr) -
                                 detail::g_power_form_minus_one(nb, corr));
    report.max_residual_ratio =
        std::max(report.max_residual_ratio, diff / (nb * nb * nb * nb));
  }
  return report;
}

double weaklight_deviation(const HbtParams& p, std::span<const ScanPoint> grid,
                           CorrelationKernel kernel) {
  double worst = 0.0;
  for (const ScanPoint& s : grid) {
    const double h = amplitude_correlation(p, s, kernel);
    const double dev = std::abs(normalized_mutual_information(p.nbar, h) - h * h);
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace hbt
