#include "etf/entropy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace etf {

OrderAlpha::OrderAlpha(double value) : value_(value), infinite_(false) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("OrderAlpha: order must be a positive finite real");
  }
}

OrderAlpha OrderAlpha::infinity() { return OrderAlpha(); }

double OrderAlpha::value() const {
  if (infinite_) throw std::logic_error("OrderAlpha: infinite order has no finite value");
  return value_;
}

DetectionEfficiency::DetectionEfficiency(double eta) : value(eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::out_of_range("DetectionEfficiency: eta must lie in [0, 1]");
  }
}

double alpha_log(double xi, const OrderAlpha& alpha) {
  if (!(xi > 0.0)) throw std::domain_error("alpha_log: argument must be positive");
  if (alpha.is_infinity()) throw std::invalid_argument("alpha_log: order must be finite");
  if (alpha.shannon_branch()) return std::log(xi);
  const double a = alpha.value();
  return (std::pow(xi, 1.0 - a) - 1.0) / (1.0 - a);
}

void check_distribution(const RealVector& p, double tol) {
  if (p.size() == 0) throw std::invalid_argument("distribution is empty");
  if (!p.allFinite()) throw std::invalid_argument("distribution has non-finite entries");
  if (p.minCoeff() < -tol) {
    std::ostringstream msg;
    msg << "distribution has negative entry " << p.minCoeff();
    throw std::invalid_argument(msg.str());
  }
  if (std::abs(p.sum() - 1.0) > tol) {
    std::ostringstream msg;
    msg << "distribution sums to " << p.sum() << " (tol " << tol << ")";
    throw std::invalid_argument(msg.str());
  }
}

double shannon_entropy(const RealVector& p) {
  double h = 0.0;
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    if (p(j) > 0.0) h -= p(j) * std::log(p(j));
  }
  return h;
}

namespace {

double power_sum(const RealVector& p, double a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    if (p(j) > 0.0) s += std::pow(p(j), a);
  }
  return s;
}

}  // namespace

double renyi_entropy(const RealVector& p, const OrderAlpha& alpha) {
  check_distribution(p);
  if (alpha.is_infinity()) return -std::log(p.maxCoeff());
  if (alpha.shannon_branch()) return shannon_entropy(p);
  const double a = alpha.value();
  return std::log(power_sum(p, a)) / (1.0 - a);
}

double tsallis_entropy(const RealVector& p, const OrderAlpha& alpha) {
  check_distribution(p);
  if (alpha.is_infinity()) {
    throw std::invalid_argument("tsallis_entropy: order must be finite");
  }
  if (alpha.shannon_branch()) return shannon_entropy(p);
  const double a = alpha.value();
  return (power_sum(p, a) - 1.0) / (1.0 - a);
}

RealVector distorted_distribution(const RealVector& p, DetectionEfficiency eta) {
  check_distribution(p);
  RealVector out(p.size() + 1);
  out.head(p.size()) = eta.value * p;
  out(p.size()) = 1.0 - eta.value;
  return out;
}

double binary_tsallis(DetectionEfficiency eta, const OrderAlpha& alpha) {
  if (alpha.is_infinity()) {
    throw std::invalid_argument("binary_tsallis: order must be finite");
  }
  const double e = eta.value;
  if (alpha.shannon_branch()) {
    double h = 0.0;
    if (e > 0.0) h -= e * std::log(e);
    if (1.0 - e > 0.0) h -= (1.0 - e) * std::log(1.0 - e);
    return h;
  }
  const double a = alpha.value();
  const double ea = (e > 0.0) ? std::pow(e, a) : 0.0;
  const double fa = (1.0 - e > 0.0) ? std::pow(1.0 - e, a) : 0.0;
  return (ea + fa - 1.0) / (1.0 - a);
}

}  // namespace etf
