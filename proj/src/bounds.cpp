#include "etf/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace etf {

namespace {

// √(n·purity − S), computed as √(n·(purity − 1/d)) so the radicand vanishes
// exactly at the pinned maximally-mixed purity; n·purity − S evaluated
// directly carries a few-ulp residue that the square root amplifies to ~1e-8.
double purity_radical(const FrameParameters& params, double purity) {
  return std::sqrt(std::max(params.n * (purity - 1.0 / params.d), 0.0));
}

long long collision_numerator(const FrameParameters& params) {
  return static_cast<long long>(params.n) * params.n - params.n;
}

long long collision_denominator(const FrameParameters& params) {
  return static_cast<long long>(params.d) * params.d - 2 * params.d + params.n;
}

void require_renyi_window(const OrderAlpha& alpha) {
  if (!alpha.is_infinity() && alpha.value() < 2.0) {
    throw std::invalid_argument("renyi_bound: order must lie in [2, inf]");
  }
}

void require_tsallis_window(const OrderAlpha& alpha) {
  if (alpha.is_infinity() || alpha.value() > 2.0) {
    throw std::invalid_argument("tsallis_bound: order must lie in (0, 2]");
  }
}

}  // namespace

double clamped_purity(const FrameParameters& params, double purity) {
  const double lo = 1.0 / params.d;
  if (purity < lo - 1e-12 || purity > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "purity " << purity << " outside [1/" << params.d << ", 1]";
    throw std::out_of_range(msg.str());
  }
  if (std::abs(purity - lo) <= 1e-12) return lo;
  if (std::abs(purity - 1.0) <= 1e-12) return 1.0;
  return purity;
}

double ic_bound(const FrameParameters& params, double purity) {
  const double p = clamped_purity(params, purity);
  const double S = params.S();
  const double c = params.c();
  return (S * c + (1.0 - c) * p) / (S * S);
}

double max_prob_bound_ic(double ic, int n) {
  if (n < 1) throw std::invalid_argument("max_prob_bound_ic: n must be positive");
  const double lo = 1.0 / n;
  if (ic < lo - 1e-12 || ic > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "index of coincidence " << ic << " outside [1/" << n << ", 1]";
    throw std::out_of_range(msg.str());
  }
  const double clamped = std::min(std::max(ic, lo), 1.0);
  return (1.0 + std::sqrt(static_cast<double>(n - 1)) *
                    std::sqrt(std::max(n * clamped - 1.0, 0.0))) /
         n;
}

double max_prob_bound_purity(const FrameParameters& params, double purity) {
  const double p = clamped_purity(params, purity);
  const double S = params.S();
  const double c = params.c();
  const double bound =
      (S + std::sqrt((params.n - 1) * (1.0 - c)) * purity_radical(params, p)) / (params.n * S);
  return std::min(bound, static_cast<double>(params.d) / params.n);
}

double min_entropy_bound(const FrameParameters& params, double purity) {
  const double p = clamped_purity(params, purity);
  const double S = params.S();
  const double c = params.c();
  return std::log(params.n * S) -
         std::log(S + std::sqrt((params.n - 1) * (1.0 - c)) * purity_radical(params, p));
}

double collision_bound(const FrameParameters& params, double purity) {
  const double p = clamped_purity(params, purity);
  const double S = params.S();
  const double c = params.c();
  return 2.0 * std::log(S) - std::log(S * c + (1.0 - c) * p);
}

double collision_bound_si(const FrameParameters& params) {
  return std::log(static_cast<double>(collision_numerator(params)) /
                  static_cast<double>(collision_denominator(params)));
}

double renyi_bound(const FrameParameters& params, double purity, const OrderAlpha& alpha) {
  require_renyi_window(alpha);
  if (alpha.is_infinity()) return min_entropy_bound(params, purity);
  const double p = clamped_purity(params, purity);
  const double a = alpha.value();
  const double S = params.S();
  const double c = params.c();
  const double collision_term = std::log(S * c + (1.0 - c) * p);
  const double min_entropy_term =
      std::log(S + std::sqrt((params.n - 1) * (1.0 - c)) * purity_radical(params, p));
  return (a * std::log(S) + (a - 2.0) * std::log(static_cast<double>(params.n)) -
          collision_term) /
             (a - 1.0) -
         (a - 2.0) / (a - 1.0) * min_entropy_term;
}

double renyi_bound_si(const FrameParameters& params, const OrderAlpha& alpha) {
  require_renyi_window(alpha);
  const double log_n = std::log(static_cast<double>(params.n));
  if (alpha.is_infinity()) {
    return log_n - std::log(static_cast<double>(params.d));
  }
  const double a = alpha.value();
  return log_n - (a - 2.0) * std::log(static_cast<double>(params.d)) / (a - 1.0) +
         std::log(static_cast<double>(params.n - 1) /
                  static_cast<double>(collision_denominator(params))) /
             (a - 1.0);
}

double tsallis_bound(const FrameParameters& params, double purity, const OrderAlpha& alpha) {
  require_tsallis_window(alpha);
  const double p = clamped_purity(params, purity);
  const double S = params.S();
  const double c = params.c();
  return alpha_log(S * S / (S * c + (1.0 - c) * p), alpha);
}

double tsallis_bound_si(const FrameParameters& params, const OrderAlpha& alpha) {
  require_tsallis_window(alpha);
  return alpha_log(static_cast<double>(collision_numerator(params)) /
                       static_cast<double>(collision_denominator(params)),
                   alpha);
}

double inefficiency_tsallis_bound(const FrameParameters& params, double purity,
                                  const OrderAlpha& alpha, DetectionEfficiency eta) {
  require_tsallis_window(alpha);
  const double scale = (eta.value > 0.0) ? std::pow(eta.value, alpha.value()) : 0.0;
  return scale * tsallis_bound(params, purity, alpha) + binary_tsallis(eta, alpha);
}

std::vector<BoundReport> certify(const EquiangularTightFrame& frame, const DensityMatrix& rho,
                                 const CertifyOptions& options) {
  const EtfPovm povm(frame);
  const OutcomeDistribution dist = outcome_distribution(povm, rho);
  const double p2 = purity(rho);
  const double ic = index_of_coincidence(dist);
  const double max_p = max_probability(dist);
  const FrameParameters& params = frame.params();

  std::vector<BoundReport> reports;
  auto push = [&](std::string name, std::optional<OrderAlpha> alpha, double bound,
                  double achieved, bool upper_bound) {
    BoundReport report;
    report.bound_name = std::move(name);
    report.alpha = alpha;
    report.bound_value = bound;
    report.achieved_value = achieved;
    report.slack = upper_bound ? bound - achieved : achieved - bound;
    report.saturated = std::abs(report.slack) <= options.sat_tol;
    reports.push_back(std::move(report));
  };

  if (options.include_coincidence) {
    push("index_of_coincidence", std::nullopt, ic_bound(params, p2), ic, true);
  }
  if (options.include_max_prob) {
    push("max_prob_from_ic", std::nullopt, max_prob_bound_ic(ic, params.n), max_p, true);
    push("max_prob_from_purity", std::nullopt, max_prob_bound_purity(params, p2), max_p, true);
  }
  if (options.include_renyi) {
    push("min_entropy", std::nullopt, min_entropy_bound(params, p2),
         renyi_entropy(dist.probs, OrderAlpha::infinity()), false);
    const double collision_achieved = renyi_entropy(dist.probs, OrderAlpha(2.0));
    push("collision", std::nullopt, collision_bound(params, p2), collision_achieved, false);
    push("collision_si", std::nullopt, collision_bound_si(params), collision_achieved, false);
    for (const OrderAlpha& alpha : options.renyi_alphas) {
      const double achieved = renyi_entropy(dist.probs, alpha);
      push("renyi", alpha, renyi_bound(params, p2, alpha), achieved, false);
      push("renyi_si", alpha, renyi_bound_si(params, alpha), achieved, false);
    }
  }
  if (options.include_tsallis) {
    for (const OrderAlpha& alpha : options.tsallis_alphas) {
      const double achieved = tsallis_entropy(dist.probs, alpha);
      push("tsallis", alpha, tsallis_bound(params, p2, alpha), achieved, false);
      push("tsallis_si", alpha, tsallis_bound_si(params, alpha), achieved, false);
      if (options.eta) {
        const RealVector distorted = distorted_distribution(dist.probs, *options.eta);
        push("tsallis_inefficiency", alpha,
             inefficiency_tsallis_bound(params, p2, alpha, *options.eta),
             tsallis_entropy(distorted, alpha), false);
      }
    }
  }
  return reports;
}

}  // namespace etf
