#pragma once

#include "hbt/gaussian.hpp"

#include <stdexcept>
#include <string>

namespace hbt {

/// Renyi-2 correlation measures of a bipartite Gaussian state, in nats.
/// The additivity identity mutual_info = classical + discord holds by
/// construction for both evaluation routes.
struct CorrelationTriple {
  double mutual_info = 0.0;
  double classical = 0.0;
  double discord = 0.0;
};

/// Pure single-mode Gaussian measurement seed: covariance
/// R(angle) * diag(lambda, 1/lambda) * R(angle)^T with lambda = exp(log_squeeze).
/// det = 1 (pure seed); displacements are irrelevant at covariance level.
struct MeasurementSeed {
  double log_squeeze = 0.0;
  double angle = 0.0;  // radians, [0, pi)

  Eigen::Matrix2d covariance() const;
};

class OutOfFamilyError : public std::domain_error {
 public:
  explicit OutOfFamilyError(const std::string& what) : std::domain_error(what) {}
};

class SingularUpdateError : public std::runtime_error {
 public:
  explicit SingularUpdateError(const std::string& what) : std::runtime_error(what) {}
};

/// log_squeeze is clamped to [-kLogSqueezeBound, kLogSqueezeBound] during the
/// discord minimization; the homodyne limit is reached well before that for
/// every state in scope.
inline constexpr double kLogSqueezeBound = 12.0;

/// True when the closed-form expressions below apply: a = b and |c| = |d|.
/// They depend on c^2 only, so both relative signs of d are covered.
bool in_closed_form_family(const StandardForm& sf);

/// S2(A) + S2(B) - S2(AB) = (1/2) ln[a^2 b^2 / ((ab - c^2)(ab - d^2))].
double mutual_information(const StandardForm& sf);

/// ln[(a^2 + a) / (a^2 + a - c^2)]. Requires the symmetric family
/// (in_closed_form_family); throws OutOfFamilyError otherwise.
double classical_correlations_closed(const StandardForm& sf);

/// ln[(a^2 + a^3 - a c^2) / (a^2 + a^3 - a c^2 - c^2)]. Same family
/// restriction as classical_correlations_closed.
double discord_closed(const StandardForm& sf);

/// Renyi-2 entropy of the conditional state of the unmeasured subsystem
/// after a Gaussian measurement with the given seed on `measured`:
/// (1/2) ln det(sigma_A - sigma_C (sigma_B + sigma_M)^{-1} sigma_C^T) for
/// measured = B. Outcome-independent for Gaussian measurements, so no
/// probability average appears.
double conditional_entropy_after_measurement(const CovarianceMatrix2& cm,
                                             const MeasurementSeed& seed,
                                             Subsystem measured = Subsystem::B);

struct DiscordOracleResult {
  double discord = 0.0;
  double classical = 0.0;
  MeasurementSeed argmin;
};

/// Numerical minimization of the conditional entropy over all pure Gaussian
/// measurement seeds: coarse grid (49 log-squeeze values x 32 angles)
/// followed by coordinate descent with golden-section line searches, to 1e-10
/// in the objective. Deterministic.
DiscordOracleResult discord_oracle(const CovarianceMatrix2& cm,
                                   Subsystem measured = Subsystem::B);

/// Bundled (I, J, D): closed forms when the state is in the symmetric family,
/// the measurement-minimization oracle otherwise.
CorrelationTriple correlation_triple(const StandardForm& sf);

}  // namespace hbt
