#pragma once

#include "etf/entropy.hpp"
#include "etf/frames.hpp"
#include "etf/measurement.hpp"

#include <optional>
#include <string>
#include <vector>

namespace etf {

/// Slack below this magnitude counts as a genuine violation.
inline constexpr double kNumTol = 1e-9;
/// Slack within this magnitude counts as saturation.
inline constexpr double kSatTol = 1e-8;

/// One certified inequality instance. For entropy bounds (lower bounds on the
/// achieved entropy) slack = achieved − bound; for probability caps slack =
/// bound − achieved. Either way slack ≥ −kNumTol when the inequality holds.
struct BoundReport {
  std::string bound_name;
  std::optional<OrderAlpha> alpha;
  double bound_value = 0.0;
  double achieved_value = 0.0;
  double slack = 0.0;
  bool saturated = false;
};

/// Pins purity to the endpoints of [1/d, 1] when within 1e-12 of them and
/// throws beyond that window. The pinning keeps √(n·purity − S) exactly zero
/// at the maximally mixed state, where rounding noise in tr(ρ²) would
/// otherwise be amplified by the square root.
double clamped_purity(const FrameParameters& params, double purity);

/// Upper bound (Sc + (1−c)·purity)/S² on the index of coincidence.
double ic_bound(const FrameParameters& params, double purity);

/// (1/n)(1 + √(n−1)·√(n·ic − 1)), the max-probability cap from coincidence.
double max_prob_bound_ic(double ic, int n);

/// min of the purity-based cap (1/(nS))(S + √((n−1)(1−c))·√(n·purity − S))
/// and the measurement cap d/n.
double max_prob_bound_purity(const FrameParameters& params, double purity);

/// ln(nS) − ln(S + √((n−1)(1−c))·√(n·purity − S)), lower bound on R_∞.
double min_entropy_bound(const FrameParameters& params, double purity);

/// 2 ln S − ln(Sc + (1−c)·purity), lower bound on the collision entropy R_2.
double collision_bound(const FrameParameters& params, double purity);
/// State-independent form ln((n²−n)/(d²−2d+n)).
double collision_bound_si(const FrameParameters& params);

/// Rényi lower bound for α ∈ [2, ∞]; reduces to the collision bound at α = 2
/// and to the min-entropy bound at α = ∞.
double renyi_bound(const FrameParameters& params, double purity, const OrderAlpha& alpha);
double renyi_bound_si(const FrameParameters& params, const OrderAlpha& alpha);

/// Tsallis lower bound ln_α(S²/(Sc + (1−c)·purity)) for α ∈ (0, 2].
double tsallis_bound(const FrameParameters& params, double purity, const OrderAlpha& alpha);
double tsallis_bound_si(const FrameParameters& params, const OrderAlpha& alpha);

/// η^α·tsallis_bound + h_α(η), the bound for the distorted distribution.
double inefficiency_tsallis_bound(const FrameParameters& params, double purity,
                                  const OrderAlpha& alpha, DetectionEfficiency eta);

struct CertifyOptions {
  std::vector<OrderAlpha> renyi_alphas{OrderAlpha(2.0), OrderAlpha(3.0), OrderAlpha(5.0),
                                       OrderAlpha(10.0), OrderAlpha::infinity()};
  std::vector<OrderAlpha> tsallis_alphas{OrderAlpha(0.5), OrderAlpha(1.0), OrderAlpha(1.5),
                                         OrderAlpha(2.0)};
  std::optional<DetectionEfficiency> eta;
  bool include_coincidence = true;
  bool include_max_prob = true;
  bool include_renyi = true;
  bool include_tsallis = true;
  double num_tol = kNumTol;
  double sat_tol = kSatTol;
};

/// Measures ρ once with the frame's POVM and evaluates every requested bound
/// against the achieved statistics.
std::vector<BoundReport> certify(const EquiangularTightFrame& frame, const DensityMatrix& rho,
                                 const CertifyOptions& options = {});

}  // namespace etf
