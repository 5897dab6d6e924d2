#pragma once

#include "etf/numerics.hpp"

#include <cmath>

namespace etf {

/// Entropy order: a positive real or the distinguished value infinity.
/// Orders within 1e-6 of 1 are evaluated on the Shannon branch.
class OrderAlpha {
 public:
  OrderAlpha(double value);  // NOLINT: implicit conversion from grid literals is intended
  static OrderAlpha infinity();

  bool is_infinity() const { return infinite_; }
  /// Finite order value; throws for the infinite order.
  double value() const;
  bool shannon_branch() const { return !infinite_ && std::abs(value_ - 1.0) <= 1e-6; }

 private:
  OrderAlpha() : value_(0.0), infinite_(true) {}
  double value_;
  bool infinite_;
};

/// Detection efficiency η ∈ [0, 1].
struct DetectionEfficiency {
  explicit DetectionEfficiency(double eta);
  double value;
};

/// α-logarithm ln_α(ξ) = (ξ^{1−α} − 1)/(1−α), equal to ln ξ at α = 1.
double alpha_log(double xi, const OrderAlpha& alpha);

/// Throws unless p is entrywise ≥ 0 and sums to 1 within `tol`.
void check_distribution(const RealVector& p, double tol = 1e-9);

/// −Σ p ln p in nats; zero entries contribute nothing.
double shannon_entropy(const RealVector& p);

/// Rényi α-entropy (1/(1−α)) ln Σ p^α; Shannon at α = 1, −ln max p at α = ∞.
double renyi_entropy(const RealVector& p, const OrderAlpha& alpha);

/// Tsallis α-entropy (Σ p^α − 1)/(1−α); Shannon at α = 1. Requires finite α.
double tsallis_entropy(const RealVector& p, const OrderAlpha& alpha);

/// Distribution of length n+1 with entries η·p_j and no-click mass 1−η.
RealVector distorted_distribution(const RealVector& p, DetectionEfficiency eta);

/// Binary Tsallis entropy h_α(η) = (η^α + (1−η)^α − 1)/(1−α).
double binary_tsallis(DetectionEfficiency eta, const OrderAlpha& alpha);

}  // namespace etf
