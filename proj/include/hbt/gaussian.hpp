#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace hbt {

// Tolerances used throughout the covariance-matrix layer. Quadrature
// convention: vacuum covariance = identity, so a thermal mode with mean
// photon number nbar has covariance (1 + 2*nbar) * I.
inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPhysicalityTol = 1e-9;
inline constexpr double kDiscriminantTol = 1e-9;

enum class Subsystem { A, B };

class NonSymmetricError : public std::invalid_argument {
 public:
  explicit NonSymmetricError(const std::string& what) : std::invalid_argument(what) {}
};

class ComplexEigenvalueError : public std::domain_error {
 public:
  explicit ComplexEigenvalueError(const std::string& what) : std::domain_error(what) {}
};

class UnphysicalError : public std::domain_error {
 public:
  explicit UnphysicalError(const std::string& what) : std::domain_error(what) {}
};

class CovarianceMatrix2;

/// Standard-form parameters (a, b, c, d) of a two-mode covariance matrix:
/// diagonal blocks a*I and b*I, off-diagonal block diag(c, d). Any two-mode
/// Gaussian state can be brought to this shape by local unitaries.
struct StandardForm {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
  double d = 0.0;

  CovarianceMatrix2 to_covariance() const;

  /// (a*b - c^2) * (a*b - d^2), the closed-form determinant of the
  /// corresponding 4x4 matrix.
  double determinant() const { return (a * b - c * c) * (a * b - d * d); }

  bool is_physical() const;
  void require_physical() const;
};

/// 4x4 real symmetric covariance matrix of a two-mode Gaussian state in
/// quadrature ordering (x1, p1, x2, p2), dimensionless units. Construction
/// enforces symmetry; physicality (uncertainty principle) is checked on
/// demand. Immutable value type.
class CovarianceMatrix2 {
 public:
  explicit CovarianceMatrix2(const Eigen::Matrix4d& m);

  static CovarianceMatrix2 from_standard_form(const StandardForm& sf);

  const Eigen::Matrix4d& matrix() const noexcept { return m_; }

  Eigen::Matrix2d block_a() const { return m_.block<2, 2>(0, 0); }
  Eigen::Matrix2d block_b() const { return m_.block<2, 2>(2, 2); }
  /// Off-diagonal (mode-1 x mode-2) block.
  Eigen::Matrix2d cross_block() const { return m_.block<2, 2>(0, 2); }

  /// Determinant via LU factorization. StandardForm::determinant() is the
  /// closed-form route when the analytic structure is known.
  double determinant() const;

  /// Positive definite and both symplectic eigenvalues >= 1 - kPhysicalityTol.
  bool is_physical() const;
  void require_physical() const;

 private:
  Eigen::Matrix4d m_;
};

struct SymplecticEigenvalues {
  double minus = 0.0;
  double plus = 0.0;
};

/// Symplectic eigenvalues (nu-, nu+) from the two-mode invariants:
/// nu^2 = (Delta -+ sqrt(Delta^2 - 4 det m)) / 2 with
/// Delta = det A + det B + 2 det C. Throws ComplexEigenvalueError when the
/// discriminant is negative beyond tolerance (unphysical input).
SymplecticEigenvalues symplectic_eigenvalues(const CovarianceMatrix2& cm);
SymplecticEigenvalues symplectic_eigenvalues(const StandardForm& sf);

/// Renyi-2 entropy (1/2) ln det(sigma), in nats. Zero iff pure.
double renyi2_entropy(const CovarianceMatrix2& cm);
double renyi2_entropy(const StandardForm& sf);
/// Single-mode specialization, used for marginals.
double renyi2_entropy(const Eigen::Matrix2d& single_mode);

/// Diagonal 2x2 block of the requested subsystem.
Eigen::Matrix2d marginal(const CovarianceMatrix2& cm, Subsystem which);

}  // namespace hbt
