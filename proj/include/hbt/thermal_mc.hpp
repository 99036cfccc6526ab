#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hbt {

/// Counter-based block cipher RNG (Philox-4x32, 10 rounds). Stateless:
/// every (key, counter) pair maps to 128 independent bits, so draws can be
/// keyed by (seed, trial, source point) and reproduced under any scheduling.
struct Philox4x32 {
  static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                            const std::array<std::uint32_t, 4>& counter) noexcept;
};

class InsufficientTrialsError : public std::invalid_argument {
 public:
  explicit InsufficientTrialsError(const std::string& what) : std::invalid_argument(what) {}
};

/// Configuration of a thermal-speckle sampling run. The source is a uniform
/// grid of statistically independent emitters over the unit disk; the
/// detector scans along a line through the origin of the far field.
struct McConfig {
  int source_points = 512;
  std::int64_t trials = 1;
  double nbar = 1.0;
  double kappa = 1000.0;
  std::uint64_t seed = 0;
  std::vector<double> detector_grid;

  void validate() const;
};

struct G2Estimate {
  double x = 0.0;
  double g2_minus_1 = 0.0;
  double std_error = 0.0;  // 1 sigma from batch means
};

struct SourcePoint {
  double u = 0.0;  // transverse coordinate along the scan direction
  double v = 0.0;
};

/// Cell centers of a uniform grid over the unit disk, sized so the count is
/// close to the requested number. Deterministic.
std::vector<SourcePoint> source_layout(int source_points);

/// One realization of the source field: independent circular complex Gaussian
/// amplitudes with <|a|^2> = nbar per point, keyed by (seed, trial, point).
std::vector<std::complex<double>> sample_source_field(const McConfig& cfg,
                                                      std::int64_t trial);

/// Far-field amplitude at detector offset x: (1/sqrt(M)) sum_j a_j
/// exp(-i kappa x u_j). Ensemble mean intensity is nbar at every x, and
/// <E*(x) E(0)> / nbar converges to jinc(kappa x) as the source grid refines.
std::complex<double> propagate_far_field(const std::vector<std::complex<double>>& field,
                                         double x, const McConfig& cfg);

/// Deterministic discrete correlation kernel (1/M) sum_j cos(kappa x u_j),
/// the exact ensemble limit of <E*(x) E(0)> / nbar for this layout.
double discrete_kernel(const McConfig& cfg, double x);

/// Normalized intensity cross-correlation minus one between the two
/// beamsplitter outputs, per detector grid point, with batch-mean standard
/// errors. The sampler is semiclassical: the 50:50 split assigns half the
/// intensity to each arm and vacuum-port shot noise is not simulated, which
/// leaves the normalized correlation law (a field-statistics identity for
/// thermal light) intact. Bit-identical output for a given config at any
/// thread count.
std::vector<G2Estimate> estimate_g2(const McConfig& cfg, int threads = 0);

}  // namespace hbt
