#pragma once

#include "hbt/optics.hpp"

#include <span>
#include <vector>

namespace hbt {

struct SeriesCoefficient {
  int order = 0;
  double coeff_g = 0.0;   // Taylor coefficient of g(nbar; h)
  double coeff_gf = 0.0;  // Taylor coefficient of g(nbar; 1)^(h^2)
};

struct SeriesMatchReport {
  int order_matched = 0;
  std::vector<SeriesCoefficient> coefficients;
  /// sup over a fixed nbar grid of |g - g(0)-power form| / nbar^4.
  double max_residual_ratio = 0.0;
};

/// g(nbar; h) = (1 + 2 nbar)^2 / ((1 + 2 nbar)^2 - (2 nbar h)^2), the argument
/// of the mutual-information logarithm for the thermal family a = 1 + 2 nbar,
/// c = 2 nbar h. Throws std::domain_error outside nbar >= 0, |h| <= 1.
double g_function(double nbar, double corr);

/// ln g(nbar; h) / ln g(nbar; 1), the mutual information normalized by its
/// value at full correlation. In [0, 1]; requires nbar > 0.
double normalized_mutual_information(double nbar, double corr);

/// Taylor coefficients in nbar, around nbar = 0, of g(nbar; h) and of
/// g(nbar; 1)^(h^2), compared order by order (exact power-series recurrences,
/// 1e-8 relative agreement test). For 0 < |h| < 1 the expected result is a
/// match through order 3 and a mismatch at order 4.
///
/// Exponent convention: the covariance entry carries the amplitude
/// correlation h, while the power-form exponent is the squared correlation
/// h^2 (the normalized intensity correlation). This is the unique pairing
/// under which the third-order match, the covariance entries, and the
/// intensity-correlation law stay mutually consistent.
SeriesMatchReport taylor_match_order(double corr, int orders);

/// max over the grid of |normalized mutual information - h(x)^2| for the
/// given source parameters and correlation kernel.
double weaklight_deviation(const HbtParams& p, std::span<const ScanPoint> grid,
                           CorrelationKernel kernel = &jinc);

namespace detail {
double g_minus_one(double nbar, double corr);
double g_power_form_minus_one(double nbar, double corr);
}  // namespace detail

}  // namespace hbt
