#include "hbt/thermal_mc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace hbt {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxBump0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxBump1 = 0xBB67AE85u;
constexpr int kBatches = 50;

inline void philox_round(std::array<std::uint32_t, 4>& c, std::uint32_t k0,
                         std::uint32_t k1) noexcept {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
}

// Two uniforms from one 128-bit block; the first lies in (0, 1] so it can be
// passed to log.
inline std::pair<double, double> uniforms(const std::array<std::uint32_t, 4>& b) noexcept {
  const std::uint64_t x = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
  const std::uint64_t y = (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
  const double u1 = (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(y >> 11) * 0x1.0p-53;
  return {u1, u2};
}

inline std::complex<double> gaussian_amplitude(std::uint64_t seed, std::int64_t trial,
                                               std::uint32_t point, double scale) noexcept {
  const auto ut = static_cast<std::uint64_t>(trial);
  const std::array<std::uint32_t, 4> counter = {
      static_cast<std::uint32_t>(ut), static_cast<std::uint32_t>(ut >> 32), point, 0u};
  const auto [u1, u2] = uniforms(Philox4x32::block(seed, counter));
  const double r = scale * std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(
    std::uint64_t key, const std::array<std::uint32_t, 4>& counter) noexcept {
  std::array<std::uint32_t, 4> c = counter;
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  for (int round = 0; round < 10; ++round) {
    philox_round(c, k0, k1);
    k0 += kPhiloxBump0;
    k1 += kPhiloxBump1;
  }
  return c;
}

void McConfig::validate() const {
  if (source_points < 16) {
    throw std::invalid_argument("source_points must be >= 16");
  }
  if (trials < 1) {
    throw std::invalid_argument("trials must be >= 1");
  }
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw std::invalid_argument("nbar must be finite and >= 0");
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("kappa must be finite and > 0");
  }
  if (!std::is_sorted(detector_grid.begin(), detector_grid.end())) {
    throw std::invalid_argument("detector grid must be sorted");
  }
  for (double x : detector_grid) {
    if (!std::isfinite(x)) throw std::invalid_argument("detector grid must be finite");
  }
}

std::vector<SourcePoint> source_layout(int source_points) {
  // Equal-area concentric rings: ring i of R spans radii [i/R, (i+1)/R] and
  // holds 2i+1 points at the ring's area midpoint, equally spaced in angle
  // with a half-cell stagger on odd rings. Every point represents the same
  // source area, and the discrete kernel converges to jinc as O(1/R^2).
  // Total count R^2, the square nearest the requested number.
  const int rings = std::max(4, static_cast<int>(std::llround(std::sqrt(source_points))));
  std::vector<SourcePoint> points;
  points.reserve(static_cast<size_t>(rings) * rings);
  for (int i = 0; i < rings; ++i) {
    const int in_ring = 2 * i + 1;
    const double radius =
        std::sqrt((static_cast<double>(i) * i + (i + 1.0) * (i + 1.0)) / 2.0) / rings;
    const double offset = (i % 2) ? std::numbers::pi / in_ring : 0.0;
    for (int k = 0; k < in_ring; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / in_ring + offset;
      points.push_back({radius * std::cos(theta), radius * std::sin(theta)});
    }
  }
  return points;
}

std::vector<std::complex<double>> sample_source_field(const McConfig& cfg,
                                                      std::int64_t trial) {
  cfg.validate();
  const auto layout = source_layout(cfg.source_points);
  const double scale = std::sqrt(0.5 * cfg.nbar);
  std::vector<std::complex<double>> field(layout.size());
  for (std::uint32_t j = 0; j < field.size(); ++j) {
    field[j] = gaussian_amplitude(cfg.seed, trial, j, scale);
  }
  return field;
}

std::complex<double> propagate_far_field(const std::vector<std::complex<double>>& field,
                                         double x, const McConfig& cfg) {
  const auto layout = source_layout(cfg.source_points);
  if (layout.size() != field.size()) {
    throw std::invalid_argument("field size does not match the source layout");
  }
  std::complex<double> sum = 0.0;
  for (size_t j = 0; j < field.size(); ++j) {
    sum += field[j] * std::polar(1.0, -cfg.kappa * x * layout[j].u);
  }
  return sum / std::sqrt(static_cast<double>(field.size()));
}

double discrete_kernel(const McConfig& cfg, double x) {
  const auto layout = source_layout(cfg.source_points);
  double sum = 0.0;
  for (const SourcePoint& p : layout) {
    sum += std::cos(cfg.kappa * x * p.u);
  }
  return sum / static_cast<double>(layout.size());
}

std::vector<G2Estimate> estimate_g2(const McConfig& cfg, int threads) {
  cfg.validate();
  if (cfg.trials < 1000) {
    throw InsufficientTrialsError("g2 estimation needs at least 1000 trials");
  }
  if (!(cfg.nbar > 0.0)) {
    throw std::invalid_argument("g2 estimation needs nbar > 0");
  }
  const auto layout = source_layout(cfg.source_points);
  const size_t m = layout.size();
  const size_t n_x = cfg.detector_grid.size();
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  const double scale = std::sqrt(0.5 * cfg.nbar);

  // Trial-independent propagation phases.
  std::vector<std::complex<double>> weights(n_x * m);
  for (size_t i = 0; i < n_x; ++i) {
    for (size_t j = 0; j < m; ++j) {
      weights[i * m + j] = std::polar(1.0, -cfg.kappa * cfg.detector_grid[i] * layout[j].u);
    }
  }

  struct BatchSums {
    std::int64_t count = 0;
    double s1 = 0.0;                 // sum of I1(0)
    std::vector<double> s2, s12;     // per grid point: sum I2(x), sum I1(0) I2(x)
  };
  std::vector<BatchSums> batches(kBatches);
  for (auto& b : batches) {
    b.s2.assign(n_x, 0.0);
    b.s12.assign(n_x, 0.0);
  }

  auto run_batch = [&](int batch_index) {
    BatchSums& sums = batches[batch_index];
    const std::int64_t t0 = cfg.trials * batch_index / kBatches;
    const std::int64_t t1 = cfg.trials * (batch_index + 1) / kBatches;
    sums.count = t1 - t0;
    std::vector<std::complex<double>> field(m);
    std::vector<std::complex<double>> e(n_x);
    for (std::int64_t t = t0; t < t1; ++t) {
      std::complex<double> e0 = 0.0;
      for (std::uint32_t j = 0; j < m; ++j) {
        field[j] = gaussian_amplitude(cfg.seed, t, j, scale);
        e0 += field[j];
      }
      std::fill(e.begin(), e.end(), std::complex<double>(0.0));
      for (size_t i = 0; i < n_x; ++i) {
        const std::complex<double>* w = &weights[i * m];
        std::complex<double> acc = 0.0;
        for (size_t j = 0; j < m; ++j) acc += field[j] * w[j];
        e[i] = acc;
      }
      const double i1 = 0.5 * std::norm(e0 * inv_sqrt_m);
      sums.s1 += i1;
      for (size_t i = 0; i < n_x; ++i) {
        const double i2 = 0.5 * std::norm(e[i] * inv_sqrt_m);
        sums.s2[i] += i2;
        sums.s12[i] += i1 * i2;
      }
    }
  };

  int n_threads = threads > 0 ? threads
                              : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::clamp(n_threads, 1, kBatches);
  if (n_threads == 1) {
    for (int b = 0; b < kBatches; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int k = 0; k < n_threads; ++k) {
      pool.emplace_back([&, k] {
        for (int b = k; b < kBatches; b += n_threads) run_batch(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Merge in batch order; point estimate from the pooled sums, error from the
  // spread of per-batch estimates.
  std::vector<G2Estimate> estimates(n_x);
  const double total = static_cast<double>(cfg.trials);
  double s1 = 0.0;
  for (const auto& b : batches) s1 += b.s1;
  for (size_t i = 0; i < n_x; ++i) {
    double s2 = 0.0, s12 = 0.0;
    for (const auto& b : batches) {
      s2 += b.s2[i];
      s12 += b.s12[i];
    }
    const double g2m1 = total * s12 / (s1 * s2) - 1.0;

    double mean = 0.0;
    std::array<double, kBatches> per_batch{};
    for (int b = 0; b < kBatches; ++b) {
      const double nb = static_cast<double>(batches[b].count);
      per_batch[b] = nb * batches[b].s12[i] / (batches[b].s1 * batches[b].s2[i]) - 1.0;
      mean += per_batch[b];
    }
    mean /= kBatches;
    double var = 0.0;
    for (int b = 0; b < kBatches; ++b) {
      const double dev = per_batch[b] - mean;
      var += dev * dev;
    }
    const double std_error = std::sqrt(var / (kBatches * (kBatches - 1.0)));
    estimates[i] = {cfg.detector_grid[i], g2m1, std_error};
  }
  return estimates;
}

}  // namespace hbt
