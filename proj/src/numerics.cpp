#include "etf/numerics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace etf {

namespace {

// Fixed stream for the unitary completion: the result must not depend on any
// caller-visible RNG state.
constexpr std::uint64_t kCompletionSeed = 0x45544655434cull;

}  // namespace

Complex inner(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size()) {
    std::ostringstream msg;
    msg << "inner: dimension mismatch (" << u.size() << " vs " << v.size() << ")";
    throw std::invalid_argument(msg.str());
  }
  return u.dot(v);  // Eigen's dot conjugates the first argument
}

ComplexVector conjugate_ket(const ComplexVector& v) { return v.conjugate(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& u, const ComplexVector& v) {
  ComplexVector out(u.size() * v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    out.segment(i * v.size(), v.size()) = u(i) * v;
  }
  return out;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, double tol) : matrix_(std::move(matrix)) {
  const std::string defect = density_defect(matrix_, tol);
  if (!defect.empty()) {
    throw std::invalid_argument("not a density matrix: " + defect);
  }
}

std::string density_defect(const ComplexMatrix& m, double tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    return "matrix must be square and non-empty";
  }
  if (!m.allFinite()) {
    return "non-finite entries";
  }
  const double herm = max_abs(m - m.adjoint());
  if (herm > tol) {
    std::ostringstream msg;
    msg << "Hermiticity residual " << herm << " exceeds " << tol;
    return msg.str();
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol) {
    std::ostringstream msg;
    msg << "trace " << tr << " deviates from 1 beyond " << tol;
    return msg.str();
  }
  const ComplexMatrix herm_part = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm_part, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol) {
    std::ostringstream msg;
    msg << "smallest eigenvalue " << min_eig << " below -" << tol;
    return msg.str();
  }
  return {};
}

double purity(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  // tr(ρ²) = Σ_ij ρ_ij ρ_ji, real for Hermitian ρ
  return m.cwiseProduct(m.transpose()).sum().real();
}

Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> normal;
  const double re = normal(rng);
  const double im = normal(rng);
  return Complex(re, im) / std::sqrt(2.0);
}

ComplexMatrix ginibre_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal;
  const double scale = 1.0 / std::sqrt(2.0);
  ComplexMatrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = Complex(re, im) * scale;
    }
  }
  return out;
}

ComplexVector random_ket(Eigen::Index dim, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    ComplexVector v = ginibre_matrix(dim, 1, rng);
    const double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
  throw std::runtime_error("random_ket: degenerate Gaussian draws");
}

DensityMatrix random_density(int dim, int rank, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("random_density: dim must be positive");
  if (rank < 1 || rank > dim) {
    std::ostringstream msg;
    msg << "random_density: rank " << rank << " outside [1, " << dim << "]";
    throw std::out_of_range(msg.str());
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    const ComplexMatrix g = ginibre_matrix(dim, rank, rng);
    ComplexMatrix m = g * g.adjoint();
    const double trace = m.trace().real();
    if (trace < 1e-12) continue;
    m /= trace;
    return DensityMatrix(std::move(m));
  }
  throw std::runtime_error("random_density: degenerate Gaussian draws");
}

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rank, rng);
}

ComplexMatrix complete_to_unitary(const ComplexMatrix& rows, double tol) {
  const Eigen::Index d = rows.rows();
  const Eigen::Index n = rows.cols();
  if (d < 1 || d >= n) {
    throw std::invalid_argument("complete_to_unitary: need 1 <= rows < cols");
  }
  const double orth_residual =
      max_abs(rows * rows.adjoint() - ComplexMatrix::Identity(d, d));
  if (orth_residual > tol) {
    std::ostringstream msg;
    msg << "complete_to_unitary: input rows not orthonormal (residual " << orth_residual
        << " > " << tol << ")";
    throw std::invalid_argument(msg.str());
  }

  // Treat the conjugated rows as orthonormal kets and extend that set.
  const ComplexMatrix basis = rows.adjoint();  // n×d, orthonormal columns
  ComplexMatrix extra(n, n - d);
  Rng rng(kCompletionSeed);

  auto project_out = [&](ComplexVector& v, Eigen::Index built) {
    v -= basis * (basis.adjoint() * v);
    if (built > 0) {
      v -= extra.leftCols(built) * (extra.leftCols(built).adjoint() * v);
    }
  };

  for (Eigen::Index k = 0; k < n - d; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
      ComplexVector v = ginibre_matrix(n, 1, rng);
      project_out(v, k);
      const double norm = v.norm();
      if (norm > 1e-6) {
        extra.col(k) = v / norm;
        placed = true;
      }
    }
    if (!placed) {
      throw std::runtime_error("complete_to_unitary: failed to find complement direction");
    }
  }

  // One re-orthogonalization pass removes first-order projection error.
  for (Eigen::Index k = 0; k < n - d; ++k) {
    ComplexVector v = extra.col(k);
    project_out(v, k);
    extra.col(k) = v / v.norm();
  }

  return extra.adjoint();
}

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

}  // namespace etf
