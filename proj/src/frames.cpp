#include "etf/frames.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace etf {

namespace {

FrameParameters make_parameters(int d, int n) {
  FrameParameters params;
  params.d = d;
  params.n = n;
  params.tightness = make_rational(n, d);
  params.overlap = (n == d) ? make_rational(0, 1)
                            : make_rational(static_cast<long long>(n) - d,
                                            (static_cast<long long>(n) - 1) * d);
  return params;
}

std::string describe_failure(const FrameReport& report) {
  std::ostringstream msg;
  msg << "unit-norm residual " << report.unit_norm_residual << ", equiangularity residual "
      << report.equiangularity_residual << ", tightness residual "
      << report.tightness_residual << " (tol " << report.tol << ")";
  return msg.str();
}

// Normalizes the columns of the unitary-completion block by the exact factor
// √(n/(n−d)) first, then numerically, guarding against completion drift.
ComplexMatrix normalized_complement_columns(const ComplexMatrix& block, int d, int n) {
  ComplexMatrix out = block * std::sqrt(static_cast<double>(n) / (n - d));
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    out.col(j) /= out.col(j).norm();
  }
  return out;
}

struct ObjectiveValue {
  double J = 0.0;
  double equiangularity_residual = 0.0;
  double tightness_residual = 0.0;

  double residual() const { return std::max(equiangularity_residual, tightness_residual); }
};

ObjectiveValue frame_objective(const ComplexMatrix& vectors, double c, double S,
                               double lambda) {
  const Eigen::Index n = vectors.cols();
  const ComplexMatrix gram = vectors.adjoint() * vectors;
  RealMatrix deviation = gram.cwiseAbs2();
  deviation.array() -= c;
  deviation.diagonal().setZero();

  const ComplexMatrix frame_op_defect =
      vectors * vectors.adjoint() - S * ComplexMatrix::Identity(vectors.rows(), vectors.rows());

  ObjectiveValue value;
  value.J = deviation.squaredNorm() + lambda * frame_op_defect.squaredNorm();
  value.equiangularity_residual = (n > 1) ? deviation.cwiseAbs().maxCoeff() : 0.0;
  value.tightness_residual = max_abs(frame_op_defect);
  return value;
}

ComplexMatrix frame_gradient(const ComplexMatrix& vectors, double c, double S,
                             double lambda) {
  const ComplexMatrix gram = vectors.adjoint() * vectors;
  RealMatrix weights = gram.cwiseAbs2();
  weights.array() -= c;
  weights.diagonal().setZero();

  const ComplexMatrix weighted = weights.cast<Complex>().cwiseProduct(gram);
  const ComplexMatrix frame_op_defect =
      vectors * vectors.adjoint() - S * ComplexMatrix::Identity(vectors.rows(), vectors.rows());

  return 4.0 * vectors * weighted + 2.0 * lambda * frame_op_defect * vectors;
}

void normalize_columns(ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    m.col(j) /= m.col(j).norm();
  }
}

// Residual system for the Levenberg-Marquardt polish: pairwise overlap
// deviations, the Hermitian frame-operator defect, and column-norm defects,
// over the real and imaginary parts of the frame matrix.
struct FrameResidualSystem {
  int d;
  int n;
  double c;
  double S;
  double lambda_sqrt;

  int var_count() const { return 2 * d * n; }
  int residual_count() const { return n * (n - 1) / 2 + d * d + n; }

  ComplexMatrix unpack(const Eigen::VectorXd& x) const {
    ComplexMatrix vectors(d, n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < d; ++i) {
        vectors(i, j) = Complex(x(2 * (j * d + i)), x(2 * (j * d + i) + 1));
      }
    }
    return vectors;
  }

  Eigen::VectorXd pack(const ComplexMatrix& vectors) const {
    Eigen::VectorXd x(var_count());
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < d; ++i) {
        x(2 * (j * d + i)) = vectors(i, j).real();
        x(2 * (j * d + i) + 1) = vectors(i, j).imag();
      }
    }
    return x;
  }

  Eigen::VectorXd residuals(const Eigen::VectorXd& x) const {
    const ComplexMatrix vectors = unpack(x);
    const ComplexMatrix gram = vectors.adjoint() * vectors;
    const ComplexMatrix frame_op_defect =
        vectors * vectors.adjoint() - S * ComplexMatrix::Identity(d, d);
    Eigen::VectorXd r(residual_count());
    int k = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        r(k++) = std::norm(gram(i, j)) - c;
      }
    }
    for (int a = 0; a < d; ++a) r(k++) = lambda_sqrt * frame_op_defect(a, a).real();
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        r(k++) = lambda_sqrt * frame_op_defect(a, b).real();
        r(k++) = lambda_sqrt * frame_op_defect(a, b).imag();
      }
    }
    for (int j = 0; j < n; ++j) r(k++) = gram(j, j).real() - 1.0;
    return r;
  }
};

double max_frame_residual(const ComplexMatrix& vectors, double c, double S) {
  const ObjectiveValue value = frame_objective(vectors, c, S, 0.0);
  double norm_residual = 0.0;
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    norm_residual = std::max(norm_residual, std::abs(vectors.col(j).norm() - 1.0));
  }
  return std::max({value.equiangularity_residual, value.tightness_residual, norm_residual});
}

// Central-difference LM iteration; returns the refined vectors (columns not
// yet renormalized). Deterministic, bounded work.
ComplexMatrix lm_polish(const FrameResidualSystem& system, const ComplexMatrix& start,
                        int max_iterations, double target) {
  Eigen::VectorXd x = system.pack(start);
  Eigen::VectorXd r = system.residuals(x);
  double mu = 1e-6;
  const double h = 1e-6;

  for (int iter = 0; iter < max_iterations; ++iter) {
    if (max_frame_residual(system.unpack(x), system.c, system.S) <= target) break;

    Eigen::MatrixXd jacobian(system.residual_count(), system.var_count());
    for (int v = 0; v < system.var_count(); ++v) {
      Eigen::VectorXd xp = x;
      Eigen::VectorXd xm = x;
      xp(v) += h;
      xm(v) -= h;
      jacobian.col(v) = (system.residuals(xp) - system.residuals(xm)) / (2.0 * h);
    }
    const Eigen::MatrixXd normal = jacobian.transpose() * jacobian;
    const Eigen::VectorXd rhs = -jacobian.transpose() * r;

    bool stepped = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal().array() += mu;
      const Eigen::VectorXd dx = damped.ldlt().solve(rhs);
      const Eigen::VectorXd xn = x + dx;
      const Eigen::VectorXd rn = system.residuals(xn);
      if (rn.squaredNorm() < r.squaredNorm()) {
        x = xn;
        r = rn;
        mu = std::max(mu * 0.3, 1e-14);
        stepped = true;
        break;
      }
      mu *= 3.0;
    }
    if (!stepped) break;
  }
  return system.unpack(x);
}

}  // namespace

Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  return Rational{g == 0 ? 0 : num / g, g == 0 ? 1 : den / g};
}

FrameParameters etf_parameters(int d, int n) {
  if (d < 1) throw std::invalid_argument("etf_parameters: d must be positive");
  if (n < d) throw std::invalid_argument("etf_parameters: n < d rejected");
  if (static_cast<long long>(n) > static_cast<long long>(d) * d) {
    throw std::invalid_argument("etf_parameters: n > d^2 rejected");
  }
  return make_parameters(d, n);
}

FrameParameters frame_parameters_unchecked(int d, int n) {
  if (d < 1 || n < d) {
    throw std::invalid_argument("frame_parameters_unchecked: need 1 <= d <= n");
  }
  return make_parameters(d, n);
}

FrameReport validate_frame(const ComplexMatrix& vectors, double tol) {
  const Eigen::Index d = vectors.rows();
  const Eigen::Index n = vectors.cols();
  if (d < 1) throw std::invalid_argument("validate_frame: empty vectors");
  if (n < d) throw std::invalid_argument("validate_frame: fewer vectors than dimensions");

  const FrameParameters params =
      frame_parameters_unchecked(static_cast<int>(d), static_cast<int>(n));
  const double c = params.c();
  const double S = params.S();

  FrameReport report;
  report.tol = tol;

  for (Eigen::Index j = 0; j < n; ++j) {
    report.unit_norm_residual =
        std::max(report.unit_norm_residual, std::abs(vectors.col(j).norm() - 1.0));
  }

  const ComplexMatrix gram = vectors.adjoint() * vectors;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      report.equiangularity_residual =
          std::max(report.equiangularity_residual, std::abs(std::norm(gram(i, j)) - c));
    }
  }

  const ComplexMatrix frame_op = vectors * vectors.adjoint();
  report.tightness_residual = max_abs(frame_op - S * ComplexMatrix::Identity(d, d));

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (frame_op + frame_op.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  report.frame_operator_min = solver.eigenvalues().minCoeff();
  report.frame_operator_max = solver.eigenvalues().maxCoeff();

  report.unit_norm_pass = report.unit_norm_residual <= tol;
  report.equiangular_pass = report.equiangularity_residual <= tol;
  report.tight_pass = report.tightness_residual <= tol;
  return report;
}

EquiangularTightFrame::EquiangularTightFrame(ComplexMatrix vectors, double tol)
    : params_(frame_parameters_unchecked(static_cast<int>(vectors.rows()),
                                         static_cast<int>(vectors.cols()))),
      vectors_(std::move(vectors)),
      report_(validate_frame(vectors_, tol)) {
  if (!report_.pass()) {
    throw std::invalid_argument("vectors do not form an equiangular tight frame: " +
                                describe_failure(report_));
  }
}

EquiangularTightFrame orthonormal_basis_frame(int d) {
  if (d < 1) throw std::invalid_argument("orthonormal_basis_frame: d must be positive");
  return EquiangularTightFrame(ComplexMatrix::Identity(d, d));
}

EquiangularTightFrame simplex_etf(int d) {
  if (d < 1) throw std::invalid_argument("simplex_etf: d must be positive");
  const int n = d + 1;
  // Roots-of-unity configuration in dimension 1, scaled to an orthonormal row.
  ComplexMatrix row(1, n);
  const double theta = 2.0 * std::numbers::pi / n;
  for (int j = 0; j < n; ++j) {
    row(0, j) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), theta * j);
  }
  const ComplexMatrix block = complete_to_unitary(row);
  return EquiangularTightFrame(normalized_complement_columns(block, 1, n));
}

EquiangularTightFrame naimark_complement(const EquiangularTightFrame& frame, double tol) {
  const int d = frame.dim();
  const int n = frame.count();
  if (n == d) {
    throw std::invalid_argument("naimark_complement: n = d frame has no complement");
  }
  const ComplexMatrix scaled =
      std::sqrt(static_cast<double>(d) / n) * frame.vectors();  // orthonormal rows
  const ComplexMatrix block = complete_to_unitary(scaled, tol);
  return EquiangularTightFrame(normalized_complement_columns(block, d, n), tol);
}

OptimizeResult optimize_etf(int d, int n, std::uint64_t seed, const OptimizeOptions& options) {
  const FrameParameters params = etf_parameters(d, n);
  const double c = params.c();
  const double S = params.S();

  // Gradient descent stops here once the polish can take over; the polish
  // only engages inside this basin.
  const bool polish = options.polish_iterations > 0;
  const double gd_target = polish ? std::max(options.success_tol, 1e-4) : options.success_tol;
  constexpr double kPolishBasin = 1e-2;

  OptimizeResult result;
  result.best_residual = std::numeric_limits<double>::infinity();
  ComplexMatrix best_vectors;

  for (int restart = 0; restart < std::max(options.restarts, 1); ++restart) {
    Rng rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(restart));
    ComplexMatrix vectors = ginibre_matrix(d, n, rng);
    normalize_columns(vectors);

    ObjectiveValue current = frame_objective(vectors, c, S, options.lambda);
    double step = options.step0;

    for (int iter = 0; iter < options.max_iterations; ++iter) {
      ++result.iterations;
      if (current.residual() <= gd_target) break;

      const ComplexMatrix gradient = frame_gradient(vectors, c, S, options.lambda);
      double trial = 2.0 * step;
      bool accepted = false;
      while (trial > 1e-18) {
        ComplexMatrix candidate = vectors - trial * gradient;
        normalize_columns(candidate);
        const ObjectiveValue value = frame_objective(candidate, c, S, options.lambda);
        if (value.J < current.J) {
          vectors = std::move(candidate);
          current = value;
          step = trial;
          accepted = true;
          break;
        }
        trial *= 0.5;
      }
      if (!accepted) break;  // stalled at numerical floor
    }

    double residual = max_frame_residual(vectors, c, S);
    if (polish && residual > options.success_tol && residual <= kPolishBasin) {
      const FrameResidualSystem system{d, n, c, S, std::sqrt(options.lambda)};
      const double target = std::min(options.success_tol, 1e-13);
      ComplexMatrix refined =
          lm_polish(system, vectors, options.polish_iterations, target);
      normalize_columns(refined);
      const double refined_residual = max_frame_residual(refined, c, S);
      if (refined_residual < residual) {
        vectors = std::move(refined);
        residual = refined_residual;
      }
    }

    if (residual < result.best_residual) {
      result.best_residual = residual;
      result.best_restart = restart;
      best_vectors = vectors;
    }
    if (result.best_residual <= options.success_tol) break;
  }

  if (result.best_residual <= options.success_tol) {
    result.converged = true;
    result.frame.emplace(std::move(best_vectors), options.success_tol);
  }
  return result;
}

ComplexMatrix canonical_phases(const ComplexMatrix& vectors) {
  ComplexMatrix out = vectors;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      const double mag = std::abs(out(i, j));
      if (mag > 1e-12) {
        out.col(j) *= std::conj(out(i, j)) / mag;
        break;
      }
    }
  }
  return out;
}

}  // namespace etf
