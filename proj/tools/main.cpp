#include "hbt/dataset.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 success, 2 invalid arguments, 3 verification failure,
// 4 I/O error.
constexpr int kExitOk = 0;
constexpr int kExitInvalidArgs = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitIo = 4;

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

// Grid spec: either "min:max:count" or a comma-separated list of x values.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    double lo = 0.0, hi = 0.0;
    long count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 2 ||
        !(hi > lo)) {
      throw std::invalid_argument("grid spec must be min:max:count with count >= 2");
    }
    grid.reserve(static_cast<size_t>(count));
    for (long i = 0; i < count; ++i) {
      grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1.0));
    }
    return grid;
  }
  std::istringstream in(spec);
  std::string field;
  while (std::getline(in, field, ',')) {
    grid.push_back(std::stod(field));
  }
  if (grid.empty()) throw std::invalid_argument("grid spec is empty");
  return grid;
}

int run_check(const std::string& path, const std::string& format) {
  if (format != "csv") {
    std::cerr << "--check supports csv output only\n";
    return kExitInvalidArgs;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot re-read " << path << "\n";
    return kExitIo;
  }
  std::ostringstream text;
  text << in.rdbuf();
  const auto issues = hbt::check_scan_csv(text.str());
  if (!issues.empty()) {
    for (const auto& issue : issues) {
      std::cerr << path << ": row " << issue.row << ": " << issue.message << "\n";
    }
    return kExitVerifyFailed;
  }
  std::cout << path << ": invariants OK\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Renyi-2 correlations of two-mode Gaussian states applied to a "
      "thermal-light intensity interferometer: scan/sweep datasets, weak-light "
      "verification reports, and Monte Carlo g2 estimates."};
  app.require_subcommand(1);
  app.fallthrough();  // accept global options after the subcommand name
  app.set_config("--config", "", "flat key=value file mirroring the flags");

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads, 0 = all cores (never affects output bytes)")
      ->capture_default_str();

  // scan
  auto* scan = app.add_subcommand("scan", "detector scan dataset at fixed nbar");
  double scan_nbar = 0.0, scan_kappa = 1000.0, scan_xmax = 0.01;
  int scan_points = 2001;
  std::string scan_out, scan_format = "csv";
  bool scan_check = false;
  scan->add_option("--nbar", scan_nbar, "mean photon number per mode")->required();
  scan->add_option("--kappa", scan_kappa, "far-field scale")->capture_default_str();
  scan->add_option("--xmax", scan_xmax, "scan range [0, xmax]")->capture_default_str();
  scan->add_option("--points", scan_points, "grid points")->capture_default_str();
  scan->add_option("--out", scan_out, "output path")->required();
  scan->add_option("--format", scan_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  scan->add_flag("--check", scan_check, "re-read the file and validate row invariants");

  // sweep-nbar
  auto* sweep = app.add_subcommand("sweep-nbar", "correlations versus nbar at fixed x");
  double sweep_x = 0.0, sweep_kappa = 1000.0, sweep_min = 1e-3, sweep_max = 1e2;
  int sweep_ppd = 10;
  std::string sweep_out, sweep_format = "csv";
  sweep->add_option("--x", sweep_x, "detector offset")->capture_default_str();
  sweep->add_option("--kappa", sweep_kappa, "far-field scale")->capture_default_str();
  sweep->add_option("--nbar-min", sweep_min, "grid start")->capture_default_str();
  sweep->add_option("--nbar-max", sweep_max, "grid end")->capture_default_str();
  sweep->add_option("--points-per-decade", sweep_ppd, "log-grid density")
      ->capture_default_str();
  sweep->add_option("--out", sweep_out, "output path")->required();
  sweep->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // verify
  auto* verify = app.add_subcommand(
      "verify", "weak-light series match and deviation report (JSON)");
  std::vector<double> verify_nbars = {0.001, 0.01, 0.1, 1.0, 10.0};
  std::string verify_kernel = "jinc", verify_out;
  verify->add_option("--nbar", verify_nbars, "photon numbers to grade")
      ->capture_default_str();
  verify->add_option("--kernel", verify_kernel, "correlation kernel")
      ->check(CLI::IsMember({"jinc", "gauss", "sinc"}))
      ->capture_default_str();
  verify->add_option("--out", verify_out, "report path")->required();

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo g2 estimates over a detector grid");
  int mc_points = 512;
  std::int64_t mc_trials = 200000;
  double mc_nbar = 1.0, mc_kappa = 1000.0;
  std::uint64_t mc_seed = 42;
  std::string mc_grid = "0:0.006:25", mc_out, mc_format = "csv";
  mc->add_option("--source-points", mc_points, "disk discretization")->capture_default_str();
  mc->add_option("--trials", mc_trials, "independent field realizations")
      ->capture_default_str();
  mc->add_option("--nbar", mc_nbar, "mean photon number per mode")->capture_default_str();
  mc->add_option("--kappa", mc_kappa, "far-field scale")->capture_default_str();
  mc->add_option("--seed", mc_seed, "RNG seed")->capture_default_str();
  mc->add_option("--grid", mc_grid, "min:max:count or comma-separated x values")
      ->capture_default_str();
  mc->add_option("--out", mc_out, "output path")->required();
  mc->add_option("--format", mc_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidArgs;
  }

  try {
    if (scan->parsed()) {
      const auto records =
          hbt::scan_records(hbt::HbtParams{scan_nbar, scan_kappa}, scan_xmax,
                            scan_points, threads);
      const std::string text = scan_format == "csv" ? hbt::scan_to_csv(records)
                                                    : hbt::scan_to_json(records);
      if (!write_file(scan_out, text)) {
        std::cerr << "cannot write " << scan_out << "\n";
        return kExitIo;
      }
      std::cout << "wrote " << scan_out << " (" << records.size() << " rows)\n";
      if (scan_check) return run_check(scan_out, scan_format);
      return kExitOk;
    }

    if (sweep->parsed()) {
      const auto records =
          hbt::sweep_records(sweep_x, sweep_kappa, sweep_min, sweep_max, sweep_ppd);
      const std::string text = sweep_format == "csv" ? hbt::sweep_to_csv(records)
                                                     : hbt::sweep_to_json(records);
      if (!write_file(sweep_out, text)) {
        std::cerr << "cannot write " << sweep_out << "\n";
        return kExitIo;
      }
      std::cout << "wrote " << sweep_out << " (" << records.size() << " rows)\n";
      return kExitOk;
    }

    if (verify->parsed()) {
      const hbt::VerifyReport report = hbt::run_verify(verify_nbars, verify_kernel);
      if (!write_file(verify_out, hbt::verify_to_json(report))) {
        std::cerr << "cannot write " << verify_out << "\n";
        return kExitIo;
      }
      for (const auto& t : report.taylor) {
        std::cout << (t.pass ? "PASS" : "FAIL") << " taylor h=" << t.h
                  << " order_matched=" << t.order_matched << "\n";
      }
      for (const auto& d : report.deviation) {
        std::cout << (d.expected_match ? (d.pass ? "PASS" : "FAIL") : "INFO")
                  << " deviation nbar=" << d.nbar << " max=" << d.max_deviation << "\n";
      }
      std::cout << (report.pass ? "PASS" : "FAIL") << " overall\n";
      return report.pass ? kExitOk : kExitVerifyFailed;
    }

    if (mc->parsed()) {
      hbt::McConfig cfg;
      cfg.source_points = mc_points;
      cfg.trials = mc_trials;
      cfg.nbar = mc_nbar;
      cfg.kappa = mc_kappa;
      cfg.seed = mc_seed;
      cfg.detector_grid = parse_grid(mc_grid);
      const auto estimates = hbt::estimate_g2(cfg, threads);
      const std::string text = mc_format == "csv" ? hbt::mc_to_csv(estimates, cfg.kappa)
                                                  : hbt::mc_to_json(estimates, cfg.kappa);
      if (!write_file(mc_out, text)) {
        std::cerr << "cannot write " << mc_out << "\n";
        return kExitIo;
      }
      std::cout << "wrote " << mc_out << " (" << estimates.size() << " rows)\n";
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kExitInvalidArgs;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kExitInvalidArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
