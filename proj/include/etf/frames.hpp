#pragma once

#include "etf/numerics.hpp"

#include <cstdint>
#include <optional>

namespace etf {

/// Reduced fraction with positive denominator.
struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Rational make_rational(long long num, long long den);

/// Exact parameters of an (n, d) equiangular tight frame:
/// tightness S = n/d and common squared overlap c = (n−d)/((n−1)d).
struct FrameParameters {
  int d = 0;
  int n = 0;
  Rational tightness;  // S
  Rational overlap;    // c

  double S() const { return tightness.value(); }
  double c() const { return overlap.value(); }
};

/// Checked constructor; requires 1 ≤ d ≤ n ≤ d².
FrameParameters etf_parameters(int d, int n);

/// Same arithmetic with only 1 ≤ d ≤ n enforced. Needed for Naimark
/// complements landing in dimension 1, where c = 1 and n exceeds d².
FrameParameters frame_parameters_unchecked(int d, int n);

struct FrameReport {
  double unit_norm_residual = 0.0;       // max_j |‖φ_j‖ − 1|
  double equiangularity_residual = 0.0;  // max_{i≠j} ||⟨φ_i|φ_j⟩|² − c|
  double tightness_residual = 0.0;       // ‖ΦΦ† − S·I‖_max
  double frame_operator_min = 0.0;       // S0
  double frame_operator_max = 0.0;       // S1
  double tol = kValidationTol;
  bool unit_norm_pass = false;
  bool equiangular_pass = false;
  bool tight_pass = false;

  bool pass() const { return unit_norm_pass && equiangular_pass && tight_pass; }
};

/// Residuals of the frame conditions for `vectors` (columns are the kets),
/// measured against the exact parameters implied by the matrix shape.
FrameReport validate_frame(const ComplexMatrix& vectors, double tol = kValidationTol);

/// n unit vectors in dimension d with constant cross-overlap whose frame
/// operator is (n/d)·I. Construction validates and throws on failure.
class EquiangularTightFrame {
 public:
  explicit EquiangularTightFrame(ComplexMatrix vectors, double tol = kValidationTol);

  const FrameParameters& params() const { return params_; }
  int dim() const { return params_.d; }
  int count() const { return params_.n; }
  /// d×n matrix, column j = |φ_j⟩.
  const ComplexMatrix& vectors() const { return vectors_; }
  ComplexVector vector(Eigen::Index j) const { return vectors_.col(j); }
  const FrameReport& report() const { return report_; }

 private:
  FrameParameters params_;
  ComplexMatrix vectors_;
  FrameReport report_;
};

/// The standard basis as a Parseval frame (n = d, c = 0).
EquiangularTightFrame orthonormal_basis_frame(int d);

/// d+1 vectors in dimension d with overlap c = 1/d², built as the Naimark
/// complement of the roots-of-unity configuration in dimension 1.
EquiangularTightFrame simplex_etf(int d);

/// ETF of n vectors in dimension n−d obtained by completing the scaled frame
/// matrix to a unitary and normalizing the complement block's columns.
EquiangularTightFrame naimark_complement(const EquiangularTightFrame& frame,
                                         double tol = kValidationTol);

struct OptimizeOptions {
  double lambda = 1.0;        // weight of the tightness penalty
  double step0 = 0.1;         // nominal gradient step
  double success_tol = 1e-7;  // max residual accepted as converged
  int max_iterations = 20000;
  int restarts = 10;
  // Levenberg-Marquardt refinement applied after the gradient phase. The flat
  // search landscapes (notably n = d²) leave plain descent parked around 1e-6;
  // the polish drives residuals to ~1e-13 in a few steps. 0 disables it.
  int polish_iterations = 60;
};

struct OptimizeResult {
  bool converged = false;
  double best_residual = 0.0;
  int best_restart = -1;
  long long iterations = 0;  // total across restarts
  std::optional<EquiangularTightFrame> frame;
};

/// Numerical search for an (n, d) ETF: minimizes the summed squared deviation
/// of pairwise overlaps from c plus a tightness penalty, by gradient descent
/// with per-step column renormalization and backtracking halving of the step,
/// followed by a bounded Levenberg-Marquardt polish of the residual system.
/// Deterministic per (seed, options). Some (d, n) pairs admit no ETF; the
/// result then reports the best residual reached.
OptimizeResult optimize_etf(int d, int n, std::uint64_t seed,
                            const OptimizeOptions& options = {});

/// Multiplies each column by a global phase making its first non-negligible
/// entry real nonnegative. Applied on serialization.
ComplexMatrix canonical_phases(const ComplexMatrix& vectors);

}  // namespace etf
