#include "hbt/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace hbt {
namespace {

std::optional<SymplecticEigenvalues> try_symplectic(double det_a, double det_b,
                                                    double det_c, double det_m) {
  const double delta = det_a + det_b + 2.0 * det_c;
  const double scale = std::max({1.0, delta * delta, std::abs(4.0 * det_m)});
  double disc = delta * delta - 4.0 * det_m;
  if (disc < -kDiscriminantTol * scale) {
    return std::nullopt;
  }
  disc = std::max(disc, 0.0);
  const double root = std::sqrt(disc);
  double nu_minus_sq = 0.5 * (delta - root);
  const double nu_plus_sq = 0.5 * (delta + root);
  if (nu_minus_sq < -kDiscriminantTol * std::max(1.0, std::abs(delta)) || nu_plus_sq < 0.0) {
    return std::nullopt;
  }
  nu_minus_sq = std::max(nu_minus_sq, 0.0);
  return SymplecticEigenvalues{std::sqrt(nu_minus_sq), std::sqrt(nu_plus_sq)};
}

std::optional<SymplecticEigenvalues> try_symplectic(const CovarianceMatrix2& cm) {
  return try_symplectic(cm.block_a().determinant(), cm.block_b().determinant(),
                        cm.cross_block().determinant(), cm.determinant());
}

bool positive_definite(const Eigen::Matrix4d& m) {
  // Leading principal minors.
  if (!(m(0, 0) > 0.0)) return false;
  if (!(m.topLeftCorner<2, 2>().determinant() > 0.0)) return false;
  if (!(m.topLeftCorner<3, 3>().determinant() > 0.0)) return false;
  return m.determinant() > 0.0;
}

// Uncertainty principle in invariant form: for positive definite sigma,
// nu-+ >= 1 is equivalent to det >= 1 and Delta <= 1 + det. The direct
// nu- route loses half the working precision when the symplectic spectrum
// is degenerate (disc -> 0), e.g. for pure two-mode squeezed states; the
// invariant form stays fully conditioned there.
bool uncertainty_ok(double delta, double det) {
  if (det < 1.0 - 2.0 * kPhysicalityTol) return false;
  return delta <= 1.0 + det + 2.0 * kPhysicalityTol * std::max(1.0, delta);
}

double entropy_from_det(double det) {
  // Physicality tolerance admits det marginally below 1; clamp at the pure
  //-state value 0.
  return std::max(0.5 * std::log(det), 0.0);
}

}  // namespace

CovarianceMatrix2::CovarianceMatrix2(const Eigen::Matrix4d& m) : m_(m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (((m - m.transpose()).cwiseAbs().maxCoeff()) > kSymmetryTol * scale) {
    throw NonSymmetricError("covariance matrix is not symmetric within tolerance");
  }
  // Exact symmetrization so downstream block algebra sees m == m^T.
  m_ = 0.5 * (m + m.transpose());
}

CovarianceMatrix2 CovarianceMatrix2::from_standard_form(const StandardForm& sf) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = sf.a;
  m(1, 1) = sf.a;
  m(2, 2) = sf.b;
  m(3, 3) = sf.b;
  m(0, 2) = m(2, 0) = sf.c;
  m(1, 3) = m(3, 1) = sf.d;
  return CovarianceMatrix2(m);
}

double CovarianceMatrix2::determinant() const {
  return Eigen::PartialPivLU<Eigen::Matrix4d>(m_).determinant();
}

bool CovarianceMatrix2::is_physical() const {
  if (!positive_definite(m_)) return false;
  const double delta = block_a().determinant() + block_b().determinant() +
                       2.0 * cross_block().determinant();
  return uncertainty_ok(delta, determinant());
}

void CovarianceMatrix2::require_physical() const {
  if (!is_physical()) {
    throw UnphysicalError("covariance matrix violates the uncertainty principle");
  }
}

CovarianceMatrix2 StandardForm::to_covariance() const {
  return CovarianceMatrix2::from_standard_form(*this);
}

bool StandardForm::is_physical() const {
  const double ab = a * b;
  if (!(a > 0.0) || !(ab - c * c > 0.0) || !(ab - d * d > 0.0)) return false;
  return uncertainty_ok(a * a + b * b + 2.0 * c * d, determinant());
}

void StandardForm::require_physical() const {
  if (!is_physical()) {
    throw UnphysicalError("standard-form parameters violate the uncertainty principle");
  }
}

SymplecticEigenvalues symplectic_eigenvalues(const CovarianceMatrix2& cm) {
  const auto nu = try_symplectic(cm);
  if (!nu) {
    throw ComplexEigenvalueError("symplectic spectrum is complex: unphysical covariance matrix");
  }
  return *nu;
}

SymplecticEigenvalues symplectic_eigenvalues(const StandardForm& sf) {
  const auto nu = try_symplectic(sf.a * sf.a, sf.b * sf.b, sf.c * sf.d, sf.determinant());
  if (!nu) {
    throw ComplexEigenvalueError("symplectic spectrum is complex: unphysical standard form");
  }
  return *nu;
}

double renyi2_entropy(const CovarianceMatrix2& cm) {
  cm.require_physical();
  return entropy_from_det(cm.determinant());
}

double renyi2_entropy(const StandardForm& sf) {
  sf.require_physical();
  return entropy_from_det(sf.determinant());
}

double renyi2_entropy(const Eigen::Matrix2d& single_mode) {
  const double scale = std::max(1.0, single_mode.cwiseAbs().maxCoeff());
  if (std::abs(single_mode(0, 1) - single_mode(1, 0)) > kSymmetryTol * scale) {
    throw NonSymmetricError("single-mode covariance is not symmetric");
  }
  const double det = single_mode.determinant();
  // Single-mode uncertainty principle: nu = sqrt(det) >= 1.
  if (!(single_mode(0, 0) > 0.0) || det < 1.0 - 2.0 * kPhysicalityTol) {
    throw UnphysicalError("single-mode covariance violates the uncertainty principle");
  }
  return entropy_from_det(det);
}

Eigen::Matrix2d marginal(const CovarianceMatrix2& cm, Subsystem which) {
  return which == Subsystem::A ? cm.block_a() : cm.block_b();
}

}  // namespace hbt
