#include "hbt/correlations.hpp"

#include "hbt/minimize.hpp"

#include <algorithm>
#include <cmath>

namespace hbt {
namespace {

constexpr double kObjectiveTol = 1e-10;
constexpr double kFamilyTol = 1e-12;
constexpr int kGridLogSqueeze = 49;  // over [-12, 12]
constexpr int kGridAngle = 32;       // over [0, pi)
constexpr int kMaxSweeps = 60;

double wrap_angle(double phi) {
  const double pi = M_PI;
  phi = std::fmod(phi, pi);
  if (phi < 0.0) phi += pi;
  return phi;
}

struct MeasurementProblem {
  Eigen::Matrix2d kept;     // marginal of the unmeasured subsystem
  Eigen::Matrix2d measured; // marginal of the measured subsystem
  Eigen::Matrix2d cross;    // kept-to-measured block

  double objective(double log_squeeze, double angle) const {
    const MeasurementSeed seed{log_squeeze, angle};
    const Eigen::Matrix2d update = measured + seed.covariance();
    const Eigen::Matrix2d cond =
        kept - cross * update.inverse() * cross.transpose();
    return 0.5 * std::log(cond.determinant());
  }
};

MeasurementProblem make_problem(const CovarianceMatrix2& cm, Subsystem measured) {
  if (measured == Subsystem::B) {
    return {cm.block_a(), cm.block_b(), cm.cross_block()};
  }
  return {cm.block_b(), cm.block_a(), Eigen::Matrix2d(cm.cross_block().transpose())};
}

}  // namespace

Eigen::Matrix2d MeasurementSeed::covariance() const {
  const double lambda = std::exp(log_squeeze);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix2d m;
  m(0, 0) = c * c * lambda + s * s / lambda;
  m(1, 1) = s * s * lambda + c * c / lambda;
  m(0, 1) = m(1, 0) = c * s * (lambda - 1.0 / lambda);
  return m;
}

bool in_closed_form_family(const StandardForm& sf) {
  const double scale_ab = std::max({1.0, std::abs(sf.a), std::abs(sf.b)});
  const double scale_cd = std::max({1.0, std::abs(sf.c), std::abs(sf.d)});
  return std::abs(sf.a - sf.b) <= kFamilyTol * scale_ab &&
         std::abs(std::abs(sf.c) - std::abs(sf.d)) <= kFamilyTol * scale_cd;
}

double mutual_information(const StandardForm& sf) {
  sf.require_physical();
  const double ab = sf.a * sf.b;
  return std::max(
      0.0, 0.5 * std::log(ab * ab / ((ab - sf.c * sf.c) * (ab - sf.d * sf.d))));
}

double classical_correlations_closed(const StandardForm& sf) {
  if (!in_closed_form_family(sf)) {
    throw OutOfFamilyError("closed form requires a = b and |c| = |d|; use discord_oracle");
  }
  sf.require_physical();
  const double a = sf.a;
  const double c2 = sf.c * sf.c;
  return std::max(0.0, std::log((a * a + a) / (a * a + a - c2)));
}

double discord_closed(const StandardForm& sf) {
  if (!in_closed_form_family(sf)) {
    throw OutOfFamilyError("closed form requires a = b and |c| = |d|; use discord_oracle");
  }
  sf.require_physical();
  const double a = sf.a;
  const double c2 = sf.c * sf.c;
  const double num = a * a + a * a * a - a * c2;
  return std::max(0.0, std::log(num / (num - c2)));
}

double conditional_entropy_after_measurement(const CovarianceMatrix2& cm,
                                             const MeasurementSeed& seed,
                                             Subsystem measured) {
  cm.require_physical();
  const MeasurementProblem problem = make_problem(cm, measured);
  const Eigen::Matrix2d update = problem.measured + seed.covariance();
  if (std::abs(update.determinant()) < 1e-9) {
    throw SingularUpdateError("measured block plus seed covariance is singular");
  }
  const Eigen::Matrix2d cond =
      problem.kept - problem.cross * update.inverse() * problem.cross.transpose();
  return 0.5 * std::log(cond.determinant());
}

DiscordOracleResult discord_oracle(const CovarianceMatrix2& cm, Subsystem measured) {
  cm.require_physical();
  const MeasurementProblem problem = make_problem(cm, measured);

  // Coarse grid over the seed parameters.
  double best_l = 0.0, best_p = 0.0;
  double best_f = problem.objective(0.0, 0.0);
  for (int i = 0; i < kGridLogSqueeze; ++i) {
    const double l = -kLogSqueezeBound +
                     2.0 * kLogSqueezeBound * i / (kGridLogSqueeze - 1.0);
    for (int j = 0; j < kGridAngle; ++j) {
      const double p = M_PI * j / kGridAngle;
      const double f = problem.objective(l, p);
      if (f < best_f) {
        best_f = f;
        best_l = l;
        best_p = p;
      }
    }
  }

  // Coordinate descent; brackets span one grid cell around the incumbent.
  const double hl = 2.0 * kLogSqueezeBound / (kGridLogSqueeze - 1.0);
  const double hp = M_PI / kGridAngle;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double sweep_start = best_f;
    const double lo = std::max(best_l - hl, -kLogSqueezeBound);
    const double hi = std::min(best_l + hl, kLogSqueezeBound);
    const auto along_l = golden_section_minimize(
        [&](double l) { return problem.objective(l, best_p); }, lo, hi, 1e-13);
    if (along_l.value < best_f) {
      best_f = along_l.value;
      best_l = along_l.x;
    }
    const auto along_p = golden_section_minimize(
        [&](double p) { return problem.objective(best_l, p); }, best_p - hp,
        best_p + hp, 1e-13);
    if (along_p.value < best_f) {
      best_f = along_p.value;
      best_p = along_p.x;
    }
    if (sweep > 1 && sweep_start - best_f < kObjectiveTol) break;
  }

  const double s_kept = renyi2_entropy(problem.kept);
  const double s_measured = renyi2_entropy(problem.measured);
  const double s_joint = renyi2_entropy(cm);
  DiscordOracleResult result;
  result.discord = std::max(0.0, s_measured - s_joint + best_f);
  result.classical = std::max(0.0, s_kept - best_f);
  result.argmin = MeasurementSeed{best_l, wrap_angle(best_p)};
  return result;
}

CorrelationTriple correlation_triple(const StandardForm& sf) {
  CorrelationTriple triple;
  triple.mutual_info = mutual_information(sf);
  if (in_closed_form_family(sf)) {
    triple.classical = classical_correlations_closed(sf);
    triple.discord = discord_closed(sf);
  } else {
    const auto oracle = discord_oracle(sf.to_covariance());
    triple.classical = oracle.classical;
    triple.discord = oracle.discord;
  }
  return triple;
}

}  // namespace hbt
