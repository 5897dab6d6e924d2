#pragma once

#include "etf/frames.hpp"

#include <string>
#include <vector>

namespace etf {

/// Rank-one resolution of the identity with elements E_j = (d/n)|φ_j⟩⟨φ_j|.
class EtfPovm {
 public:
  explicit EtfPovm(EquiangularTightFrame frame, double tol = kValidationTol);

  const EquiangularTightFrame& frame() const { return frame_; }
  int outcomes() const { return frame_.count(); }
  int dim() const { return frame_.dim(); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  double completeness_residual() const { return completeness_residual_; }

 private:
  EquiangularTightFrame frame_;
  std::vector<ComplexMatrix> elements_;
  double completeness_residual_;
};

EtfPovm povm_from_frame(const EquiangularTightFrame& frame, double tol = kValidationTol);

/// Length-n probability vector of one measurement, with the largest excursion
/// outside [0, 1] seen before clamping.
struct OutcomeDistribution {
  RealVector probs;
  double clamp_deviation = 0.0;
  std::string frame_tag;
  std::string state_tag;
};

/// p_j = (d/n)⟨φ_j|ρ|φ_j⟩. Probabilities are clamped to [0, 1]; the sum must
/// stay within `sum_tol` of 1.
OutcomeDistribution outcome_distribution(const EtfPovm& povm, const DensityMatrix& rho,
                                         double sum_tol = 1e-9);

/// Index of coincidence Σ_j p_j², in [1/n, 1].
double index_of_coincidence(const RealVector& probs);
double index_of_coincidence(const OutcomeDistribution& dist);

double max_probability(const RealVector& probs);
double max_probability(const OutcomeDistribution& dist);

/// Orthonormal family Ψ_k = n_k Σ_j ω^{kj} |φ_j⟩⊗|φ_j^*⟩ in dimension d²,
/// with n_0 = 1/√(nS) and n_k = 1/√(n−nc) for k ≥ 1.
struct PsiFamily {
  ComplexMatrix vectors;  // d²×n, column k = |Ψ_k⟩
  Complex omega;          // exp(2πi/n)
  double psi0_normalizer;  // √(nS)
  double psik_normalizer;  // √(n−nc)
};

PsiFamily psi_family(const EquiangularTightFrame& frame);

/// ‖Ψ†Ψ − I‖_max, the deviation of the family from orthonormality.
double gram_residual(const PsiFamily& family);

}  // namespace etf
