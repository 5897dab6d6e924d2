#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <string>

namespace etf {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

using Rng = std::mt19937_64;

/// Default tolerance for validity checks (Hermiticity, trace, norms).
inline constexpr double kValidationTol = 1e-8;
/// Default tolerance for identity residuals (unitarity, Gram deviations).
inline constexpr double kResidualTol = 1e-10;

/// ⟨u|v⟩, conjugate-linear in the first argument.
Complex inner(const ComplexVector& u, const ComplexVector& v);

/// Entrywise conjugate, so that inner(conjugate_ket(u), conjugate_ket(v)) == inner(v, u).
ComplexVector conjugate_ket(const ComplexVector& v);

/// Tensor (Kronecker) product, row-major composite indexing: (i_a*rows_b + i_b).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& u, const ComplexVector& v);

/// Hermitian, positive-semidefinite, unit-trace operator.
///
/// Construction validates all three conditions and throws std::invalid_argument
/// on failure; instances are immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix matrix, double tol = kValidationTol);

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// Empty string when `m` is a density matrix within `tol`, else a description
/// of the first failing condition.
std::string density_defect(const ComplexMatrix& m, double tol = kValidationTol);

/// tr(ρ²), in [1/dim, 1].
double purity(const DensityMatrix& rho);

/// Standard complex Gaussian (x + iy)/√2 with x, y ~ N(0,1).
Complex complex_gaussian(Rng& rng);

/// Matrix of independent standard complex Gaussians.
ComplexMatrix ginibre_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unit vector (normalized Gaussian ket).
ComplexVector random_ket(Eigen::Index dim, Rng& rng);

/// ρ = GG†/tr(GG†) with G a dim×rank Ginibre matrix drawn from `rng`.
DensityMatrix random_density(int dim, int rank, Rng& rng);

/// Seeded convenience overload; deterministic per seed.
DensityMatrix random_density(int dim, int rank, std::uint64_t seed);

/// Given a d×n matrix with orthonormal rows (d < n), returns the (n−d)×n block
/// completing it to an n×n unitary. Rows are produced by projecting random
/// vectors onto the complementary subspace, orthonormalizing, and running one
/// re-orthogonalization pass; the completion is deterministic.
ComplexMatrix complete_to_unitary(const ComplexMatrix& rows, double tol = kValidationTol);

/// Largest absolute entry, ‖·‖_max.
double max_abs(const ComplexMatrix& m);

}  // namespace etf
