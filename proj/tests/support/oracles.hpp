#pragma once

#include "dd.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>

// Independent reference implementations used only by tests. Each one takes a
// different route than the production code it checks.
namespace oracle {

/// J1 by the raw power series sum_m (-1)^m (y/2)^(2m+1) / (m! (m+1)!) in
/// double-double arithmetic. Usable for |y| <= ~60 where the worst term
/// magnification (~3e19 at y = 50) still leaves ~1e-13 absolute accuracy.
inline double j1_power_series_dd(double y) {
  using namespace testdd;
  DD q = mul(mul(dd(y), dd(y)), dd(0.25));
  DD term = dd(0.5 * y);
  DD sum = term;
  for (int m = 0; m < 256; ++m) {
    term = neg(div(mul(term, q), dd((m + 1.0) * (m + 2.0))));
    sum = add(sum, term);
    if (std::abs(term.hi) < 1e-26) break;
  }
  return to_double(sum);
}

/// jinc by its own even power series sum_m (-1)^m (y/2)^(2m) / (m! (m+1)!).
inline double jinc_series_dd(double y) {
  using namespace testdd;
  DD q = mul(mul(dd(y), dd(y)), dd(0.25));
  DD term = dd(1.0);
  DD sum = term;
  for (int m = 0; m < 256; ++m) {
    term = neg(div(mul(term, q), dd((m + 1.0) * (m + 2.0))));
    sum = add(sum, term);
    if (std::abs(term.hi) < 1e-26) break;
  }
  return to_double(sum);
}

/// Hankel asymptotic form in long double with truncation at the smallest
/// term. Accurate far beyond 1e-8 for y >= 50.
inline double j1_asymptotic_ld(double y) {
  const long double z = y;
  const long double inv8z = 1.0L / (8.0L * z);
  long double s = 1.0L;
  long double p_sum = 1.0L, q_sum = 0.0L;
  long double sign_p = -1.0L, sign_q = 1.0L;
  long double prev = 1.0L;
  for (int n = 1; n <= 40; ++n) {
    const long double odd = 2.0L * n - 1.0L;
    s *= (4.0L - odd * odd) * inv8z / n;
    if (std::abs(s) >= prev) break;
    prev = std::abs(s);
    if (n % 2 == 0) {
      p_sum += sign_p * s;
      sign_p = -sign_p;
    } else {
      q_sum += sign_q * s;
      sign_q = -sign_q;
    }
    if (prev < 1e-24L) break;
  }
  const long double chi = z - 0.75L * 3.14159265358979323846264338328L;
  const long double amp = std::sqrt(2.0L / (3.14159265358979323846264338328L * z));
  return static_cast<double>(amp * (p_sum * std::cos(chi) - q_sum * std::sin(chi)));
}

/// First positive root of J1, bisected on the double-double series.
inline double j1_first_root_dd() {
  double lo = 3.8, hi = 3.9;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (j1_power_series_dd(lo) * j1_power_series_dd(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Symplectic eigenvalues by a dense eigensolver on Omega * sigma, whose
/// spectrum is {+-i nu_-, +-i nu_+} for physical sigma.
inline std::array<double, 2> symplectic_dense(const Eigen::Matrix4d& sigma) {
  Eigen::Matrix4d omega;
  omega << 0, 1, 0, 0,
          -1, 0, 0, 0,
           0, 0, 0, 1,
           0, 0, -1, 0;
  Eigen::EigenSolver<Eigen::Matrix4d> solver(omega * sigma);
  std::array<double, 4> mags{};
  for (int i = 0; i < 4; ++i) {
    mags[static_cast<size_t>(i)] = std::abs(solver.eigenvalues()[i]);
  }
  std::sort(mags.begin(), mags.end());
  return {0.5 * (mags[0] + mags[1]), 0.5 * (mags[2] + mags[3])};
}

/// Closed-form Taylor coefficient of g(nbar; h) at the given order, via
/// partial fractions: 1 + 4 nbar + 4 (1 - h^2) nbar^2 =
/// (1 + (2 + 2h) nbar)(1 + (2 - 2h) nbar).
inline double taylor_g_closed(int order, double h) {
  if (order == 0) return 1.0;
  if (order == 1) return 0.0;
  const long double ah = std::abs(static_cast<long double>(h));
  const int k = order - 2;
  if (ah < 1e-30L) return 0.0;
  const long double alpha = 2.0L + 2.0L * ah;
  const long double beta = 2.0L - 2.0L * ah;
  const long double r =
      ((k % 2 == 0) ? 1.0L : -1.0L) *
      (std::pow(alpha, k + 1.0L) - std::pow(beta, k + 1.0L)) / (4.0L * ah);
  return static_cast<double>(4.0L * ah * ah * r);
}

/// Closed-form Taylor coefficient of g(nbar; 1)^(h^2) via the binomial and
/// negative-binomial expansions of (1 + 4 nbar^2 / (1 + 4 nbar))^(h^2).
inline double taylor_gf_closed(int order, double h) {
  if (order == 0) return 1.0;
  const long double alpha = static_cast<long double>(h) * h;
  long double total = 0.0L;
  for (int j = 1; 2 * j <= order; ++j) {
    long double binom = 1.0L;
    for (int i = 0; i < j; ++i) binom *= (alpha - i) / (i + 1.0L);
    long double choose = 1.0L;  // C(order - j - 1, j - 1)
    for (int i = 1; i < j; ++i) {
      choose *= static_cast<long double>(order - j - i) / i;
    }
    total += binom * std::pow(4.0L, static_cast<long double>(j)) * choose *
             std::pow(-4.0L, static_cast<long double>(order - 2 * j));
  }
  return static_cast<double>(total);
}

}  // namespace oracle
