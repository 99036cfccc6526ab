#pragma once

#include "hbt/gaussian.hpp"

namespace hbt {

/// Bessel function of the first kind, order one. Power series below |y| = 12,
/// Hankel asymptotic expansion (amplitude/phase form) above; absolute error
/// <= 1e-10 for |y| <= 1e4. Odd in y.
double bessel_j1(double y);

/// jinc(y) = 2 J1(y) / y with the removable singularity filled: jinc(0) = 1.
/// Even; |jinc| <= 1. Far-field amplitude correlation kernel of a uniform
/// disk source.
double jinc(double y);

/// Alternative narrowband-source correlation kernels, injectable wherever a
/// disk is not assumed. Both equal 1 at y = 0.
double gaussian_kernel(double y);  // exp(-y^2)
double sinc_kernel(double y);      // sin(y)/y

using CorrelationKernel = double (*)(double);

/// Physical scenario parameters: mean photon number per source mode and the
/// lumped far-field scale kappa = (wavenumber x source area) / distance,
/// treated as a single opaque parameter in detector-plane units.
struct HbtParams {
  double nbar = 0.0;
  double kappa = 1000.0;

  void validate() const;
};

/// Transverse offset of the scanning detector; the fixed detector sits at 0.
struct ScanPoint {
  double x = 0.0;
};

/// Normalized field correlation between the fixed and scanning detectors,
/// h(x) = jinc(kappa |x|); h(0) = 1.
double amplitude_correlation(const HbtParams& p, const ScanPoint& s);
double amplitude_correlation(const HbtParams& p, const ScanPoint& s,
                             CorrelationKernel kernel);

/// Two-mode covariance of the split far field:
/// a = b = 1 + 2 nbar, c = d = 2 nbar h(x). Physical for every nbar >= 0.
StandardForm covariance_at(const HbtParams& p, const ScanPoint& s);

/// Normalized intensity cross-correlation minus one, h(x)^2. Equals 1 at
/// x = 0 and is independent of nbar.
double intensity_correlation_minus_one(const HbtParams& p, const ScanPoint& s);

namespace detail {
// Exposed for seam tests: the two branches of bessel_j1.
double j1_power_series(double y);
double j1_asymptotic(double y);
inline constexpr double kJ1SeriesCutoff = 12.0;
}  // namespace detail

}  // namespace hbt
