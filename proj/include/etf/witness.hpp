#pragma once

#include "etf/bounds.hpp"
#include "etf/measurement.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace etf {

/// Density matrix of a bipartite system with row-major composite index
/// ν = a·dB + b.
class BipartiteDensityMatrix {
 public:
  BipartiteDensityMatrix(int dim_a, int dim_b, ComplexMatrix matrix,
                         double tol = kValidationTol);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  const DensityMatrix& state() const { return state_; }
  const ComplexMatrix& matrix() const { return state_.matrix(); }

  /// Reduced state of subsystem A (B traced out), and vice versa.
  DensityMatrix reduced_a() const;
  DensityMatrix reduced_b() const;

 private:
  int dim_a_;
  int dim_b_;
  DensityMatrix state_;
};

/// Verdict of one criterion evaluation. `violated` is true only when the
/// statistic lies strictly beyond the threshold by more than num_tol;
/// non-violation is reported as "inconclusive", never as a separability or
/// unsteerability claim.
struct WitnessVerdict {
  std::string criterion;
  std::optional<OrderAlpha> alpha;
  double statistic = 0.0;
  double threshold = 0.0;
  bool violated = false;
  std::string interpretation;  // "entangled" | "steerable" | "inconclusive"
};

/// Elements M_k = Σ_j N_{A,j} ⊗ N_{B,k⊖j} with ⊖ the modular subtraction.
std::vector<ComplexMatrix> convolution_povm(const EtfPovm& povm_a, const EtfPovm& povm_b);

/// Outcome distribution p_k = tr(M_k ρ) of an explicit element list.
RealVector povm_distribution(const std::vector<ComplexMatrix>& elements,
                             const DensityMatrix& rho, double sum_tol = 1e-9);

/// Tsallis separability criterion: a separable state obeys
/// H_α(dist) ≥ ln_α((n²−n)/(d²−2d+n)) for α ∈ (0, 2].
WitnessVerdict separability_tsallis_test(const RealVector& dist_m, const OrderAlpha& alpha,
                                         const FrameParameters& params_a,
                                         double num_tol = kNumTol);

/// Max-probability separability criterion: a separable state obeys
/// max_k p_k ≤ d/n.
WitnessVerdict separability_maxprob_test(const RealVector& dist_m,
                                         const FrameParameters& params_a,
                                         double num_tol = kNumTol);

/// n×n table of joint probabilities with row marginals q_i = Σ_j p_ij.
struct JointDistribution {
  RealMatrix table;
  RealVector row_marginals() const { return table.rowwise().sum(); }
};

/// p_jk = (d²/n²)⟨φ_j φ_k^*|ρ_AB|φ_j φ_k^*⟩; the B side uses the conjugated
/// frame vectors.
JointDistribution joint_etf_distribution(const EquiangularTightFrame& frame,
                                         const BipartiteDensityMatrix& rho_ab,
                                         double sum_tol = 1e-9);

/// Correlation measure G = Σ_j p_jj.
double correlation_G(const JointDistribution& joint);

/// Product-state bound (1/S²)·√(Sc+(1−c)·purity_a)·√(Sc+(1−c)·purity_b) on G.
double g_separability_bound(const FrameParameters& params, double purity_a, double purity_b);
/// State-independent bound (d²−2d+n)/(n²−n), valid for all separable states.
double g_bound_si(const FrameParameters& params);

/// Verdict for G against the state-independent separability bound.
WitnessVerdict g_correlation_test(const JointDistribution& joint,
                                  const FrameParameters& params, double num_tol = kNumTol);

/// (d − 2 + n/d)/(n − 1): the separability cap on G divided by its value on
/// the maximally entangled state; below 1 whenever n > d.
double detectability_ratio(int d, int n);

/// LHS of the steering criterion, (1/(α−1))(1 − Σ_ij p_ij^α q_i^{1−α}) for
/// α ≠ 1 and the conditional Shannon entropy at α = 1. Rows with q_i = 0 are
/// skipped (they carry zero weight).
double steering_statistic(const JointDistribution& joint, const OrderAlpha& alpha);

/// Unsteerable states obey steering_statistic ≥ ln_α((n²−n)/(d²−2d+n)).
WitnessVerdict steering_test(const JointDistribution& joint, const OrderAlpha& alpha,
                             const FrameParameters& params, double num_tol = kNumTol);

/// Convex combination Σ_m w_m ρ_A^{(m)} ⊗ ρ_B^{(m)} with Dirichlet-uniform
/// weights and Ginibre factors of random rank; deterministic per seed.
BipartiteDensityMatrix random_separable_state(int d, int components, std::uint64_t seed);

/// ρ_A ⊗ ρ_B for explicitly given factors.
BipartiteDensityMatrix product_state(const DensityMatrix& rho_a, const DensityMatrix& rho_b);

/// |Φ+⟩⟨Φ+| with |Φ+⟩ = (1/√d)Σ_ν |ν⟩⊗|ν⟩; reduced states are maximally mixed.
BipartiteDensityMatrix max_entangled_state(int d);

}  // namespace etf
