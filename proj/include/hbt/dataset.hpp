#pragma once

#include "hbt/correlations.hpp"
#include "hbt/optics.hpp"
#include "hbt/thermal_mc.hpp"
#include "hbt/weaklight.hpp"

#include <span>
#include <string>
#include <vector>

namespace hbt {

/// One row of a detector scan. Normalized columns divide by the analytic
/// x = 0 values; g2m1 is the normalized intensity correlation minus one.
struct ScanRecord {
  double x = 0.0;
  double I = 0.0;
  double J = 0.0;
  double D = 0.0;
  double I_norm = 0.0;
  double J_norm = 0.0;
  double D_norm = 0.0;
  double g2m1 = 0.0;
};

/// One row of a photon-number sweep at fixed detector offset.
struct SweepRecord {
  double nbar = 0.0;
  double I = 0.0;
  double J = 0.0;
  double D = 0.0;
  double J_over_I = 0.0;
  double D_over_I = 0.0;
};

std::vector<ScanRecord> scan_records(const HbtParams& p, double x_max, int points,
                                     int threads = 0);

/// Log-spaced nbar grid with exact endpoints, about points_per_decade points
/// per decade.
std::vector<SweepRecord> sweep_records(double x, double kappa, double nbar_min,
                                       double nbar_max, int points_per_decade);

/// 12 significant digits, shortest form, '.' decimal separator.
std::string format_value(double v);

std::string scan_to_csv(std::span<const ScanRecord> records);
std::string scan_to_json(std::span<const ScanRecord> records);
std::string sweep_to_csv(std::span<const SweepRecord> records);
std::string sweep_to_json(std::span<const SweepRecord> records);
std::string mc_to_csv(std::span<const G2Estimate> estimates, double kappa);
std::string mc_to_json(std::span<const G2Estimate> estimates, double kappa);

struct RecordIssue {
  long row = 0;  // 1-based data row; 0 = header/file level
  std::string message;
};

/// Re-reads scan CSV text and checks the per-row invariants
/// (I = J + D within 1e-10, I_norm and g2m1 within [0, 1]).
std::vector<RecordIssue> check_scan_csv(const std::string& text);

struct TaylorCheck {
  double h = 0.0;
  int order_matched = 0;
  double max_residual_ratio = 0.0;
  bool pass = false;
};

struct DeviationCheck {
  double nbar = 0.0;
  double max_deviation = 0.0;
  double threshold = 0.0;
  bool expected_match = false;  // pass criterion applies only in the weak-light regime
  bool pass = false;
};

struct VerifyReport {
  std::string kernel;
  std::vector<TaylorCheck> taylor;
  std::vector<DeviationCheck> deviation;
  bool pass = false;
};

CorrelationKernel kernel_by_name(const std::string& name);

/// Series-match and weak-light deviation checks for the given photon numbers
/// and kernel. Deviations are graded against nbar^2/2 + 10 nbar^3 for
/// nbar <= 0.1; larger nbar rows are informational (expected_match = false).
VerifyReport run_verify(const std::vector<double>& nbars, const std::string& kernel_name,
                        double kappa = 1000.0);

std::string verify_to_json(const VerifyReport& report);

}  // namespace hbt
