#include "etf/witness.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace etf {

namespace {

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  // tr(ab) = Σ_ij a_ij b_ji
  return a.cwiseProduct(b.transpose()).sum().real();
}

WitnessVerdict make_verdict(std::string criterion, std::optional<OrderAlpha> alpha,
                            double statistic, double threshold, bool violated,
                            const char* positive_reading) {
  WitnessVerdict verdict;
  verdict.criterion = std::move(criterion);
  verdict.alpha = alpha;
  verdict.statistic = statistic;
  verdict.threshold = threshold;
  verdict.violated = violated;
  verdict.interpretation = violated ? positive_reading : "inconclusive";
  return verdict;
}

}  // namespace

BipartiteDensityMatrix::BipartiteDensityMatrix(int dim_a, int dim_b, ComplexMatrix matrix,
                                               double tol)
    : dim_a_(dim_a), dim_b_(dim_b), state_(std::move(matrix), tol) {
  if (dim_a < 1 || dim_b < 1) {
    throw std::invalid_argument("BipartiteDensityMatrix: subsystem dims must be positive");
  }
  if (state_.dim() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    std::ostringstream msg;
    msg << "BipartiteDensityMatrix: matrix dimension " << state_.dim() << " is not "
        << dim_a << "*" << dim_b;
    throw std::invalid_argument(msg.str());
  }
}

DensityMatrix BipartiteDensityMatrix::reduced_a() const {
  const ComplexMatrix& m = state_.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(dim_a_, dim_a_);
  for (int a = 0; a < dim_a_; ++a) {
    for (int a2 = 0; a2 < dim_a_; ++a2) {
      for (int b = 0; b < dim_b_; ++b) {
        out(a, a2) += m(a * dim_b_ + b, a2 * dim_b_ + b);
      }
    }
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix BipartiteDensityMatrix::reduced_b() const {
  const ComplexMatrix& m = state_.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(dim_b_, dim_b_);
  for (int b = 0; b < dim_b_; ++b) {
    for (int b2 = 0; b2 < dim_b_; ++b2) {
      for (int a = 0; a < dim_a_; ++a) {
        out(b, b2) += m(a * dim_b_ + b, a * dim_b_ + b2);
      }
    }
  }
  return DensityMatrix(std::move(out));
}

std::vector<ComplexMatrix> convolution_povm(const EtfPovm& povm_a, const EtfPovm& povm_b) {
  const int n = povm_a.outcomes();
  if (povm_b.outcomes() != n) {
    std::ostringstream msg;
    msg << "convolution_povm: outcome counts differ (" << n << " vs " << povm_b.outcomes()
        << ")";
    throw std::invalid_argument(msg.str());
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(povm_a.dim()) * povm_b.dim();
  std::vector<ComplexMatrix> elements(n, ComplexMatrix::Zero(dim, dim));
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      const int shifted = ((k - j) % n + n) % n;
      elements[k] += kron(povm_a.elements()[j], povm_b.elements()[shifted]);
    }
  }
  return elements;
}

RealVector povm_distribution(const std::vector<ComplexMatrix>& elements,
                             const DensityMatrix& rho, double sum_tol) {
  RealVector probs(static_cast<Eigen::Index>(elements.size()));
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (elements[k].rows() != rho.dim()) {
      throw std::invalid_argument("povm_distribution: element/state dimension mismatch");
    }
    probs(static_cast<Eigen::Index>(k)) =
        std::min(std::max(trace_product(elements[k], rho.matrix()), 0.0), 1.0);
  }
  const double sum = probs.sum();
  if (std::abs(sum - 1.0) > sum_tol) {
    std::ostringstream msg;
    msg << "povm_distribution: probabilities sum to " << sum;
    throw std::runtime_error(msg.str());
  }
  return probs;
}

WitnessVerdict separability_tsallis_test(const RealVector& dist_m, const OrderAlpha& alpha,
                                         const FrameParameters& params_a, double num_tol) {
  const double statistic = tsallis_entropy(dist_m, alpha);
  const double threshold = tsallis_bound_si(params_a, alpha);
  return make_verdict("separability_tsallis", alpha, statistic, threshold,
                      statistic < threshold - num_tol, "entangled");
}

WitnessVerdict separability_maxprob_test(const RealVector& dist_m,
                                         const FrameParameters& params_a, double num_tol) {
  check_distribution(dist_m);
  const double statistic = dist_m.maxCoeff();
  const double threshold = static_cast<double>(params_a.d) / params_a.n;
  return make_verdict("separability_maxprob", std::nullopt, statistic, threshold,
                      statistic > threshold + num_tol, "entangled");
}

JointDistribution joint_etf_distribution(const EquiangularTightFrame& frame,
                                         const BipartiteDensityMatrix& rho_ab,
                                         double sum_tol) {
  const int d = frame.dim();
  const int n = frame.count();
  if (rho_ab.dim_a() != d || rho_ab.dim_b() != d) {
    std::ostringstream msg;
    msg << "joint_etf_distribution: frame dimension " << d << " requires a " << d << "x" << d
        << " bipartite state, got " << rho_ab.dim_a() << "x" << rho_ab.dim_b();
    throw std::invalid_argument(msg.str());
  }
  const double weight = (static_cast<double>(d) / n) * (static_cast<double>(d) / n);
  const ComplexMatrix& m = rho_ab.matrix();

  JointDistribution joint;
  joint.table.resize(n, n);
  for (int k = 0; k < n; ++k) {
    const ComplexVector phi_k_conj = conjugate_ket(frame.vector(k));
    for (int j = 0; j < n; ++j) {
      const ComplexVector v = kron(frame.vector(j), phi_k_conj);
      const double p = weight * v.dot(m * v).real();
      joint.table(j, k) = std::min(std::max(p, 0.0), 1.0);
    }
  }
  const double sum = joint.table.sum();
  if (std::abs(sum - 1.0) > sum_tol) {
    std::ostringstream msg;
    msg << "joint_etf_distribution: table sums to " << sum;
    throw std::runtime_error(msg.str());
  }
  return joint;
}

double correlation_G(const JointDistribution& joint) {
  if (joint.table.rows() != joint.table.cols()) {
    throw std::invalid_argument("correlation_G: table must be square");
  }
  return joint.table.diagonal().sum();
}

double g_separability_bound(const FrameParameters& params, double purity_a, double purity_b) {
  const double S = params.S();
  const double c = params.c();
  auto branch = [&](double purity) {
    return std::sqrt(S * c + (1.0 - c) * clamped_purity(params, purity));
  };
  return branch(purity_a) * branch(purity_b) / (S * S);
}

double g_bound_si(const FrameParameters& params) {
  return static_cast<double>(static_cast<long long>(params.d) * params.d - 2 * params.d +
                             params.n) /
         static_cast<double>(static_cast<long long>(params.n) * params.n - params.n);
}

WitnessVerdict g_correlation_test(const JointDistribution& joint,
                                  const FrameParameters& params, double num_tol) {
  const double statistic = correlation_G(joint);
  const double threshold = g_bound_si(params);
  return make_verdict("g_correlation", std::nullopt, statistic, threshold,
                      statistic > threshold + num_tol, "entangled");
}

double detectability_ratio(int d, int n) {
  if (d < 1 || n < d || static_cast<long long>(n) > static_cast<long long>(d) * d) {
    throw std::invalid_argument("detectability_ratio: need 1 <= d <= n <= d^2");
  }
  if (n == d) return 1.0;  // no margin at the orthonormal-basis boundary
  return (d - 2.0 + static_cast<double>(n) / d) / (n - 1.0);
}

double steering_statistic(const JointDistribution& joint, const OrderAlpha& alpha) {
  if (alpha.is_infinity() || alpha.value() > 2.0) {
    throw std::invalid_argument("steering_statistic: order must lie in (0, 2]");
  }
  const RealVector q = joint.row_marginals();

  if (alpha.shannon_branch()) {
    // α→1 limit: Σ_i q_i H₁(p_{·|i}), the conditional Shannon entropy.
    double h = 0.0;
    for (Eigen::Index i = 0; i < joint.table.rows(); ++i) {
      if (q(i) <= 0.0) continue;
      for (Eigen::Index j = 0; j < joint.table.cols(); ++j) {
        const double p = joint.table(i, j);
        if (p > 0.0) h += p * std::log(q(i) / p);
      }
    }
    return h;
  }

  const double a = alpha.value();
  // Σ_ij p_ij^α q_i^{1−α} accumulated per row as q_i Σ_j (p_ij/q_i)^α, which
  // keeps the powers in [0, 1].
  double s = 0.0;
  for (Eigen::Index i = 0; i < joint.table.rows(); ++i) {
    if (q(i) <= 0.0) continue;
    double row = 0.0;
    for (Eigen::Index j = 0; j < joint.table.cols(); ++j) {
      const double r = joint.table(i, j) / q(i);
      if (r > 0.0) row += std::pow(r, a);
    }
    s += q(i) * row;
  }
  return (1.0 - s) / (a - 1.0);
}

WitnessVerdict steering_test(const JointDistribution& joint, const OrderAlpha& alpha,
                             const FrameParameters& params, double num_tol) {
  const double statistic = steering_statistic(joint, alpha);
  const double threshold = tsallis_bound_si(params, alpha);
  return make_verdict("steering_tsallis", alpha, statistic, threshold,
                      statistic < threshold - num_tol, "steerable");
}

BipartiteDensityMatrix random_separable_state(int d, int components, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_separable_state: d must be positive");
  if (components < 1) {
    throw std::invalid_argument("random_separable_state: need at least one component");
  }
  Rng rng(seed);
  std::exponential_distribution<double> exponential(1.0);
  std::uniform_int_distribution<int> rank_dist(1, d);

  RealVector weights(components);
  for (int m = 0; m < components; ++m) weights(m) = exponential(rng);
  weights /= weights.sum();

  ComplexMatrix mix = ComplexMatrix::Zero(static_cast<Eigen::Index>(d) * d,
                                          static_cast<Eigen::Index>(d) * d);
  for (int m = 0; m < components; ++m) {
    const DensityMatrix rho_a = random_density(d, rank_dist(rng), rng);
    const DensityMatrix rho_b = random_density(d, rank_dist(rng), rng);
    mix += weights(m) * kron(rho_a.matrix(), rho_b.matrix());
  }
  return BipartiteDensityMatrix(d, d, std::move(mix));
}

BipartiteDensityMatrix product_state(const DensityMatrix& rho_a, const DensityMatrix& rho_b) {
  return BipartiteDensityMatrix(static_cast<int>(rho_a.dim()), static_cast<int>(rho_b.dim()),
                                kron(rho_a.matrix(), rho_b.matrix()));
}

BipartiteDensityMatrix max_entangled_state(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled_state: d must be at least 2");
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(d) * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int nu = 0; nu < d; ++nu) {
    psi(static_cast<Eigen::Index>(nu) * d + nu) = amp;
  }
  return BipartiteDensityMatrix(d, d, psi * psi.adjoint());
}

}  // namespace etf
