#include "etf/measurement.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace etf {

EtfPovm::EtfPovm(EquiangularTightFrame frame, double tol) : frame_(std::move(frame)) {
  const int d = frame_.dim();
  const int n = frame_.count();
  const double weight = static_cast<double>(d) / n;

  elements_.reserve(n);
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    const ComplexVector phi = frame_.vector(j);
    elements_.push_back(weight * (phi * phi.adjoint()));
    sum += elements_.back();
  }
  completeness_residual_ = max_abs(sum - ComplexMatrix::Identity(d, d));
  if (completeness_residual_ > tol) {
    std::ostringstream msg;
    msg << "povm_from_frame: completeness residual " << completeness_residual_
        << " exceeds " << tol;
    throw std::invalid_argument(msg.str());
  }
}

EtfPovm povm_from_frame(const EquiangularTightFrame& frame, double tol) {
  return EtfPovm(frame, tol);
}

OutcomeDistribution outcome_distribution(const EtfPovm& povm, const DensityMatrix& rho,
                                         double sum_tol) {
  if (rho.dim() != povm.dim()) {
    std::ostringstream msg;
    msg << "outcome_distribution: state dimension " << rho.dim()
        << " does not match measurement dimension " << povm.dim();
    throw std::invalid_argument(msg.str());
  }
  const int n = povm.outcomes();
  const double weight = static_cast<double>(povm.dim()) / n;
  const ComplexMatrix& vectors = povm.frame().vectors();

  OutcomeDistribution dist;
  dist.probs.resize(n);
  for (int j = 0; j < n; ++j) {
    const double p = weight * (vectors.col(j).dot(rho.matrix() * vectors.col(j))).real();
    const double clamped = std::min(std::max(p, 0.0), 1.0);
    dist.clamp_deviation = std::max(dist.clamp_deviation, std::abs(p - clamped));
    dist.probs(j) = clamped;
  }

  const double sum = dist.probs.sum();
  if (std::abs(sum - 1.0) > sum_tol) {
    std::ostringstream msg;
    msg << "outcome_distribution: probabilities sum to " << sum << " (tol " << sum_tol << ")";
    throw std::runtime_error(msg.str());
  }
  return dist;
}

double index_of_coincidence(const RealVector& probs) { return probs.squaredNorm(); }

double index_of_coincidence(const OutcomeDistribution& dist) {
  return index_of_coincidence(dist.probs);
}

double max_probability(const RealVector& probs) { return probs.maxCoeff(); }

double max_probability(const OutcomeDistribution& dist) { return max_probability(dist.probs); }

PsiFamily psi_family(const EquiangularTightFrame& frame) {
  const int d = frame.dim();
  const int n = frame.count();
  const double c = frame.params().c();
  const double S = frame.params().S();
  if (1.0 - c < 1e-12) {
    throw std::invalid_argument("psi_family: degenerate frame with c = 1 has no family");
  }

  PsiFamily family;
  family.omega = std::polar(1.0, 2.0 * std::numbers::pi / n);
  family.psi0_normalizer = std::sqrt(n * S);
  family.psik_normalizer = std::sqrt(n - n * c);

  // Columns |φ_j⟩⊗|φ_j^*⟩ in dimension d².
  ComplexMatrix products(d * d, n);
  for (int j = 0; j < n; ++j) {
    products.col(j) = kron(frame.vector(j), conjugate_ket(frame.vector(j)));
  }

  ComplexMatrix coefficients(n, n);
  for (int j = 0; j < n; ++j) {
    coefficients(j, 0) = 1.0 / family.psi0_normalizer;
    for (int k = 1; k < n; ++k) {
      coefficients(j, k) =
          std::polar(1.0, 2.0 * std::numbers::pi * k * j / n) / family.psik_normalizer;
    }
  }
  family.vectors = products * coefficients;
  return family;
}

double gram_residual(const PsiFamily& family) {
  const Eigen::Index n = family.vectors.cols();
  return max_abs(family.vectors.adjoint() * family.vectors -
                 ComplexMatrix::Identity(n, n));
}

}  // namespace etf
