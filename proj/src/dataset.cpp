#include "hbt/dataset.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hbt {
namespace {

using ordered_json = nlohmann::ordered_json;

void parallel_rows(int rows, int threads, const std::function<void(int)>& fill_row) {
  int n_threads = threads > 0 ? threads
                              : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::clamp(n_threads, 1, std::max(1, rows / 64));
  if (n_threads == 1) {
    for (int i = 0; i < rows; ++i) fill_row(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int k = 0; k < n_threads; ++k) {
    pool.emplace_back([&, k] {
      for (int i = k; i < rows; i += n_threads) fill_row(i);
    });
  }
  for (auto& th : pool) th.join();
}

ordered_json scan_record_json(const ScanRecord& r) {
  return ordered_json{{"x", r.x},           {"I", r.I},
                      {"J", r.J},           {"D", r.D},
                      {"I_norm", r.I_norm}, {"J_norm", r.J_norm},
                      {"D_norm", r.D_norm}, {"g2m1", r.g2m1}};
}

}  // namespace

std::vector<ScanRecord> scan_records(const HbtParams& p, double x_max, int points,
                                     int threads) {
  p.validate();
  if (!(p.nbar > 0.0)) {
    throw std::invalid_argument("scan requires nbar > 0 (normalization at x = 0)");
  }
  if (points < 2) {
    throw std::invalid_argument("scan requires at least 2 points");
  }
  if (!(x_max > 0.0)) {
    throw std::invalid_argument("scan requires x_max > 0");
  }
  const CorrelationTriple at_zero = correlation_triple(covariance_at(p, ScanPoint{0.0}));

  std::vector<ScanRecord> records(static_cast<size_t>(points));
  parallel_rows(points, threads, [&](int i) {
    const ScanPoint s{x_max * i / (points - 1.0)};
    const CorrelationTriple triple = correlation_triple(covariance_at(p, s));
    ScanRecord& r = records[static_cast<size_t>(i)];
    r.x = s.x;
    r.I = triple.mutual_info;
    r.J = triple.classical;
    r.D = triple.discord;
    r.I_norm = triple.mutual_info / at_zero.mutual_info;
    r.J_norm = triple.classical / at_zero.classical;
    r.D_norm = triple.discord / at_zero.discord;
    r.g2m1 = intensity_correlation_minus_one(p, s);
  });
  return records;
}

std::vector<SweepRecord> sweep_records(double x, double kappa, double nbar_min,
                                       double nbar_max, int points_per_decade) {
  if (!(0.0 < nbar_min && nbar_min < nbar_max)) {
    throw std::invalid_argument("sweep requires 0 < nbar_min < nbar_max");
  }
  if (points_per_decade < 1) {
    throw std::invalid_argument("sweep requires points_per_decade >= 1");
  }
  const double decades = std::log10(nbar_max / nbar_min);
  const int points =
      std::max(2, static_cast<int>(std::llround(points_per_decade * decades)) + 1);

  std::vector<SweepRecord> records(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double nbar = nbar_min * std::pow(nbar_max / nbar_min, i / (points - 1.0));
    const HbtParams p{nbar, kappa};
    const CorrelationTriple triple = correlation_triple(covariance_at(p, ScanPoint{x}));
    SweepRecord& r = records[static_cast<size_t>(i)];
    r.nbar = nbar;
    r.I = triple.mutual_info;
    r.J = triple.classical;
    r.D = triple.discord;
    r.J_over_I = triple.classical / triple.mutual_info;
    r.D_over_I = triple.discord / triple.mutual_info;
  }
  return records;
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string scan_to_csv(std::span<const ScanRecord> records) {
  std::string out = "x,I,J,D,I_norm,J_norm,D_norm,g2m1\n";
  for (const ScanRecord& r : records) {
    out += format_value(r.x) + ',' + format_value(r.I) + ',' + format_value(r.J) +
           ',' + format_value(r.D) + ',' + format_value(r.I_norm) + ',' +
           format_value(r.J_norm) + ',' + format_value(r.D_norm) + ',' +
           format_value(r.g2m1) + '\n';
  }
  return out;
}

std::string scan_to_json(std::span<const ScanRecord> records) {
  ordered_json rows = ordered_json::array();
  for (const ScanRecord& r : records) rows.push_back(scan_record_json(r));
  return rows.dump(2) + "\n";
}

std::string sweep_to_csv(std::span<const SweepRecord> records) {
  std::string out = "nbar,I,J,D,J_over_I,D_over_I\n";
  for (const SweepRecord& r : records) {
    out += format_value(r.nbar) + ',' + format_value(r.I) + ',' + format_value(r.J) +
           ',' + format_value(r.D) + ',' + format_value(r.J_over_I) + ',' +
           format_value(r.D_over_I) + '\n';
  }
  return out;
}

std::string sweep_to_json(std::span<const SweepRecord> records) {
  ordered_json rows = ordered_json::array();
  for (const SweepRecord& r : records) {
    rows.push_back(ordered_json{{"nbar", r.nbar},
                                {"I", r.I},
                                {"J", r.J},
                                {"D", r.D},
                                {"J_over_I", r.J_over_I},
                                {"D_over_I", r.D_over_I}});
  }
  return rows.dump(2) + "\n";
}

std::string mc_to_csv(std::span<const G2Estimate> estimates, double kappa) {
  std::string out = "x,g2m1_estimate,std_error,g2m1_analytic\n";
  for (const G2Estimate& e : estimates) {
    const double h = jinc(kappa * std::abs(e.x));
    out += format_value(e.x) + ',' + format_value(e.g2_minus_1) + ',' +
           format_value(e.std_error) + ',' + format_value(h * h) + '\n';
  }
  return out;
}

std::string mc_to_json(std::span<const G2Estimate> estimates, double kappa) {
  ordered_json rows = ordered_json::array();
  for (const G2Estimate& e : estimates) {
    const double h = jinc(kappa * std::abs(e.x));
    rows.push_back(ordered_json{{"x", e.x},
                                {"g2m1_estimate", e.g2_minus_1},
                                {"std_error", e.std_error},
                                {"g2m1_analytic", h * h}});
  }
  return rows.dump(2) + "\n";
}

std::vector<RecordIssue> check_scan_csv(const std::string& text) {
  std::vector<RecordIssue> issues;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "x,I,J,D,I_norm,J_norm,D_norm,g2m1") {
    issues.push_back({0, "unexpected or missing header"});
    return issues;
  }
  long row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::array<double, 8> v{};
    std::istringstream fields(line);
    std::string field;
    size_t count = 0;
    bool parse_ok = true;
    while (std::getline(fields, field, ',')) {
      if (count >= v.size()) {
        parse_ok = false;
        break;
      }
      try {
        v[count++] = std::stod(field);
      } catch (const std::exception&) {
        parse_ok = false;
        break;
      }
    }
    if (!parse_ok || count != v.size()) {
      issues.push_back({row, "malformed row"});
      continue;
    }
    const double i_val = v[1], j_val = v[2], d_val = v[3];
    if (std::abs(i_val - (j_val + d_val)) > 1e-10) {
      issues.push_back({row, "I != J + D beyond 1e-10"});
    }
    if (v[4] < -1e-9 || v[4] > 1.0 + 1e-9) {
      issues.push_back({row, "I_norm outside [0, 1]"});
    }
    if (v[7] < -1e-9 || v[7] > 1.0 + 1e-9) {
      issues.push_back({row, "g2m1 outside [0, 1]"});
    }
  }
  return issues;
}

CorrelationKernel kernel_by_name(const std::string& name) {
  if (name == "jinc") return &jinc;
  if (name == "gauss") return &gaussian_kernel;
  if (name == "sinc") return &sinc_kernel;
  throw std::invalid_argument("unknown kernel '" + name + "' (expected jinc, gauss, or sinc)");
}

VerifyReport run_verify(const std::vector<double>& nbars, const std::string& kernel_name,
                        double kappa) {
  const CorrelationKernel kernel = kernel_by_name(kernel_name);
  VerifyReport report;
  report.kernel = kernel_name;
  report.pass = true;

  static constexpr double kHGrid[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  for (double h : kHGrid) {
    const SeriesMatchReport series = taylor_match_order(h, 6);
    TaylorCheck check{h, series.order_matched, series.max_residual_ratio,
                      series.order_matched == 3};
    report.pass = report.pass && check.pass;
    report.taylor.push_back(check);
  }

  std::vector<ScanPoint> grid(2001);
  for (size_t i = 0; i < grid.size(); ++i) {
    grid[i].x = 0.01 * static_cast<double>(i) / (grid.size() - 1.0);
  }
  for (double nbar : nbars) {
    const HbtParams p{nbar, kappa};
    DeviationCheck check;
    check.nbar = nbar;
    check.max_deviation = weaklight_deviation(p, grid, kernel);
    check.threshold = nbar * nbar / 2.0 + 10.0 * nbar * nbar * nbar;
    check.expected_match = nbar <= 0.1;
    check.pass = !check.expected_match || check.max_deviation <= check.threshold;
    report.pass = report.pass && check.pass;
    report.deviation.push_back(check);
  }
  return report;
}

std::string verify_to_json(const VerifyReport& report) {
  ordered_json taylor = ordered_json::array();
  for (const TaylorCheck& c : report.taylor) {
    taylor.push_back(ordered_json{{"h", c.h},
                                  {"order_matched", c.order_matched},
                                  {"max_residual_ratio", c.max_residual_ratio},
                                  {"pass", c.pass}});
  }
  ordered_json deviation = ordered_json::array();
  for (const DeviationCheck& c : report.deviation) {
    deviation.push_back(ordered_json{{"nbar", c.nbar},
                                     {"max_deviation", c.max_deviation},
                                     {"threshold", c.threshold},
                                     {"expected_match", c.expected_match},
                                     {"pass", c.pass}});
  }
  ordered_json doc{{"kernel", report.kernel},
                   {"taylor", taylor},
                   {"weaklight_deviation", deviation},
                   {"pass", report.pass}};
  return doc.dump(2) + "\n";
}

}  // namespace hbt
