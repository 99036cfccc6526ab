#include "hbt/optics.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace hbt;

namespace {
constexpr double kJ1FirstRoot = 3.8317059702075123;  // bisected on the series oracle
constexpr double kJ1AtOne = 0.4400505857449335;
constexpr double kJincAtTenth = 0.99875052072483994;
}  // namespace

TEST_CASE("bessel_j1 point values") {
  CHECK(bessel_j1(0.0) == 0.0);
  CHECK(std::abs(bessel_j1(1.0) - kJ1AtOne) <= 1e-12);
  CHECK(std::abs(bessel_j1(kJ1FirstRoot)) <= 1e-12);
  CHECK(std::abs(bessel_j1(3.8317059702)) <= 1e-9);
}

TEST_CASE("bessel_j1 is odd") {
  for (double y : {0.3, 1.7, 5.0, 11.9, 12.1, 40.0, 313.0, 9876.5}) {
    CHECK(bessel_j1(-y) == -bessel_j1(y));
  }
}

TEST_CASE("bessel_j1 matches the power-series oracle on [0, 50]") {
  double worst = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double y = 50.0 * i / 10000.0;
    worst = std::max(worst, std::abs(bessel_j1(y) - oracle::j1_power_series_dd(y)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("bessel_j1 matches the asymptotic oracle on [50, 1e4]") {
  double worst = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double y = 50.0 * std::pow(200.0, i / 4000.0);
    worst = std::max(worst, std::abs(bessel_j1(y) - oracle::j1_asymptotic_ld(y)));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("series and asymptotic branches agree at the seam") {
  CHECK(std::abs(detail::j1_power_series(detail::kJ1SeriesCutoff) -
                 detail::j1_asymptotic(detail::kJ1SeriesCutoff)) <= 1e-11);
}

TEST_CASE("first root location") {
  // Bisect the production implementation and compare to the series oracle.
  double lo = 3.8, hi = 3.9;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (bessel_j1(lo) * bessel_j1(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double root = 0.5 * (lo + hi);
  CHECK(std::abs(root - 3.8317059702) <= 1e-8);
  CHECK(std::abs(root - oracle::j1_first_root_dd()) <= 1e-9);
}

TEST_CASE("jinc values and shape") {
  CHECK(jinc(0.0) == 1.0);
  CHECK(std::abs(jinc(kJ1FirstRoot)) <= 1e-12);
  CHECK(std::abs(jinc(3.8317059702)) <= 1e-9);
  CHECK(std::abs(jinc(0.1) - kJincAtTenth) <= 1e-12);
  CHECK(std::abs(jinc(0.1) - oracle::jinc_series_dd(0.1)) <= 1e-13);
  for (double y : {1e-9, 1e-5, 0.5, 2.0, 7.7, 100.0}) {
    CHECK(jinc(-y) == jinc(y));
    CHECK(std::abs(jinc(y)) <= 1.0);
  }
}

TEST_CASE("alternative kernels") {
  CHECK(gaussian_kernel(0.0) == 1.0);
  CHECK(sinc_kernel(0.0) == 1.0);
  CHECK(std::abs(sinc_kernel(M_PI)) <= 1e-15);
  CHECK(gaussian_kernel(2.0) == doctest::Approx(std::exp(-4.0)).epsilon(1e-15));
}

TEST_CASE("amplitude correlation") {
  const HbtParams p{10.0, 1000.0};
  CHECK(amplitude_correlation(p, ScanPoint{0.0}) == 1.0);
  CHECK(std::abs(amplitude_correlation(p, ScanPoint{3.8317059702e-3})) <= 1e-9);
  CHECK(std::abs(amplitude_correlation(p, ScanPoint{1e-4}) - kJincAtTenth) <= 1e-12);
  CHECK(amplitude_correlation(p, ScanPoint{-2.5e-4}) ==
        amplitude_correlation(p, ScanPoint{2.5e-4}));
  CHECK_THROWS_AS(amplitude_correlation(HbtParams{-1.0, 1000.0}, ScanPoint{0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(amplitude_correlation(HbtParams{1.0, 0.0}, ScanPoint{0.0}),
                  std::invalid_argument);
}

TEST_CASE("covariance of the split far field") {
  SUBCASE("bright source at zero offset") {
    const StandardForm sf = covariance_at(HbtParams{10.0, 1000.0}, ScanPoint{0.0});
    CHECK(sf.a == 21.0);
    CHECK(sf.b == 21.0);
    CHECK(sf.c == 20.0);
    CHECK(sf.d == 20.0);
  }
  SUBCASE("weak source") {
    const StandardForm sf = covariance_at(HbtParams{0.01, 1000.0}, ScanPoint{0.0});
    CHECK(sf.a == doctest::Approx(1.02).epsilon(1e-15));
    CHECK(sf.c == doctest::Approx(0.02).epsilon(1e-15));
  }
  SUBCASE("correlations vanish at the kernel zero") {
    const StandardForm sf =
        covariance_at(HbtParams{10.0, 1000.0}, ScanPoint{3.8317059702e-3});
    CHECK(sf.a == 21.0);
    CHECK(std::abs(sf.c) <= 20.0 * 1e-9);
  }
  SUBCASE("always physical, up to very bright sources") {
    for (double nbar : {0.0, 1e-3, 0.1, 1.0, 42.0, 1e4}) {
      for (double x : {0.0, 1e-4, 1e-3, 3.83e-3, 5e-3, 0.3}) {
        const StandardForm sf = covariance_at(HbtParams{nbar, 1000.0}, ScanPoint{x});
        CHECK(sf.is_physical());
        CHECK(symplectic_eigenvalues(sf).minus >= 1.0 - 1e-9);
      }
    }
  }
}

TEST_CASE("normalized intensity correlation") {
  const HbtParams p{10.0, 1000.0};
  CHECK(intensity_correlation_minus_one(p, ScanPoint{0.0}) == 1.0);
  const double at_root = intensity_correlation_minus_one(p, ScanPoint{3.8317059702e-3});
  CHECK(at_root <= 1e-18);
  CHECK(std::abs(intensity_correlation_minus_one(p, ScanPoint{1e-4}) -
                 0.99750260264813895) <= 1e-12);
  // equals the squared amplitude correlation by construction
  for (double x : {0.0, 1e-4, 2.7e-3, 0.01}) {
    const double h = amplitude_correlation(p, ScanPoint{x});
    CHECK(intensity_correlation_minus_one(p, ScanPoint{x}) == h * h);
    // and is independent of nbar
    CHECK(intensity_correlation_minus_one(HbtParams{0.01, 1000.0}, ScanPoint{x}) ==
          intensity_correlation_minus_one(p, ScanPoint{x}));
  }
}
