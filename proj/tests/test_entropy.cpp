#include "etf/entropy.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace etf;

namespace {

RealVector uniform(int n) { return RealVector::Constant(n, 1.0 / n); }

RealVector deterministic(int n, int at) {
  RealVector p = RealVector::Zero(n);
  p(at) = 1.0;
  return p;
}

const std::vector<OrderAlpha> kFiniteGrid = {0.3, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0};

}  // namespace

TEST_CASE("alpha_log reference values") {
  for (const OrderAlpha& alpha : kFiniteGrid) {
    CHECK(alpha_log(1.0, alpha) == doctest::Approx(0.0).epsilon(1e-15));
  }
  CHECK(alpha_log(std::exp(1.0), OrderAlpha(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(alpha_log(2.0, OrderAlpha(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(alpha_log(0.0, OrderAlpha(2.0)), std::domain_error);
  CHECK_THROWS_AS(alpha_log(-1.0, OrderAlpha(0.5)), std::domain_error);
  CHECK_THROWS_AS(alpha_log(2.0, OrderAlpha::infinity()), std::invalid_argument);
}

TEST_CASE("order alpha validation") {
  CHECK_THROWS_AS(OrderAlpha(0.0), std::invalid_argument);
  CHECK_THROWS_AS(OrderAlpha(-2.0), std::invalid_argument);
  CHECK(OrderAlpha::infinity().is_infinity());
  CHECK(OrderAlpha(1.0 + 1e-7).shannon_branch());
  CHECK_FALSE(OrderAlpha(1.1).shannon_branch());
}

TEST_CASE("renyi entropy of uniform and deterministic distributions") {
  for (const OrderAlpha& alpha : kFiniteGrid) {
    CHECK(renyi_entropy(uniform(5), alpha) == doctest::Approx(std::log(5.0)).epsilon(1e-12));
    CHECK(renyi_entropy(deterministic(5, 2), alpha) == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(renyi_entropy(uniform(5), OrderAlpha::infinity()) ==
        doctest::Approx(std::log(5.0)).epsilon(1e-12));
  CHECK(renyi_entropy(deterministic(5, 0), OrderAlpha::infinity()) == 0.0);
}

TEST_CASE("renyi collision value on (1/2, 1/4, 1/4)") {
  RealVector p(3);
  p << 0.5, 0.25, 0.25;
  CHECK(renyi_entropy(p, OrderAlpha(2.0)) ==
        doctest::Approx(-std::log(3.0 / 8.0)).epsilon(1e-14));
}

TEST_CASE("renyi entropy is nonincreasing in alpha") {
  Rng rng(41);
  const double grid[] = {0.3, 0.7, 1.0, 1.3, 2.0, 4.0, 16.0, 64.0};
  for (int trial = 0; trial < 50; ++trial) {
    const RealVector p = test::random_distribution(2 + trial % 6, rng);
    double previous = std::numeric_limits<double>::infinity();
    for (double a : grid) {
      const double value = renyi_entropy(p, OrderAlpha(a));
      CHECK(value <= previous + 1e-10);
      previous = value;
    }
    CHECK(renyi_entropy(p, OrderAlpha::infinity()) <= previous + 1e-10);
  }
}

TEST_CASE("renyi interpolation between collision and min entropy") {
  // R_α ≥ ((α−2)/(α−1))·R_∞ + (1/(α−1))·R_2 for α in [2, 64].
  Rng rng(43);
  const double grid[] = {2.0, 2.5, 3.0, 5.0, 8.0, 16.0, 64.0};
  for (int trial = 0; trial < 50; ++trial) {
    const RealVector p = test::random_distribution(2 + trial % 7, rng);
    const double r2 = renyi_entropy(p, OrderAlpha(2.0));
    const double rinf = renyi_entropy(p, OrderAlpha::infinity());
    for (double a : grid) {
      const double lower = (a - 2.0) / (a - 1.0) * rinf + r2 / (a - 1.0);
      CHECK(renyi_entropy(p, OrderAlpha(a)) >= lower - 1e-10);
    }
  }
}

TEST_CASE("renyi entropy is continuous across the alpha = 1 window") {
  Rng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const RealVector p = test::random_distribution(4, rng);
    const double shannon = shannon_entropy(p);
    CHECK(renyi_entropy(p, OrderAlpha(1.0 + 1e-7)) == doctest::Approx(shannon).epsilon(1e-8));
    CHECK(renyi_entropy(p, OrderAlpha(1.0 - 1e-7)) == doctest::Approx(shannon).epsilon(1e-8));
  }
}

TEST_CASE("tsallis entropy reference values") {
  CHECK(tsallis_entropy(uniform(3), OrderAlpha(2.0)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  for (const OrderAlpha& alpha : kFiniteGrid) {
    CHECK(tsallis_entropy(deterministic(4, 1), alpha) == doctest::Approx(0.0).epsilon(1e-14));
    // On the uniform n-point distribution H_α = ln_α(n).
    CHECK(tsallis_entropy(uniform(6), alpha) ==
          doctest::Approx(alpha_log(6.0, alpha)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(tsallis_entropy(uniform(3), OrderAlpha::infinity()), std::invalid_argument);
}

TEST_CASE("tsallis entropy approaches Shannon near alpha = 1") {
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const RealVector p = test::random_distribution(5, rng);
    const double shannon = shannon_entropy(p);
    CHECK(tsallis_entropy(p, OrderAlpha(1.0 + 1e-7)) == doctest::Approx(shannon).epsilon(1e-8));
    CHECK(tsallis_entropy(p, OrderAlpha(1.0 - 1e-7)) == doctest::Approx(shannon).epsilon(1e-8));
  }
}

TEST_CASE("entropies are maximal on uniform distributions") {
  Rng rng(59);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 5;
    const RealVector p = test::random_distribution(n, rng);
    for (const OrderAlpha& alpha : {OrderAlpha(0.5), OrderAlpha(1.0), OrderAlpha(2.0)}) {
      CHECK(renyi_entropy(p, alpha) <= renyi_entropy(uniform(n), alpha) + 1e-12);
      CHECK(tsallis_entropy(p, alpha) <= tsallis_entropy(uniform(n), alpha) + 1e-12);
    }
  }
}

TEST_CASE("entropy rejects invalid distributions") {
  RealVector not_normalized(2);
  not_normalized << 0.6, 0.6;
  CHECK_THROWS_AS(renyi_entropy(not_normalized, OrderAlpha(2.0)), std::invalid_argument);

  RealVector negative(2);
  negative << 1.2, -0.2;
  CHECK_THROWS_AS(tsallis_entropy(negative, OrderAlpha(2.0)), std::invalid_argument);
}

TEST_CASE("distorted distribution structure") {
  RealVector p(3);
  p << 0.5, 0.3, 0.2;

  const RealVector full = distorted_distribution(p, DetectionEfficiency(1.0));
  REQUIRE(full.size() == 4);
  CHECK((full.head(3) - p).cwiseAbs().maxCoeff() == 0.0);
  CHECK(full(3) == 0.0);

  const RealVector none = distorted_distribution(p, DetectionEfficiency(0.0));
  CHECK(none.head(3).cwiseAbs().maxCoeff() == 0.0);
  CHECK(none(3) == 1.0);

  CHECK_THROWS_AS(DetectionEfficiency(-0.1), std::out_of_range);
  CHECK_THROWS_AS(DetectionEfficiency(1.1), std::out_of_range);
}

TEST_CASE("distortion identity for the Tsallis entropy") {
  // H_α(p^{(η)}) = η^α H_α(p) + h_α(η)
  Rng rng(61);
  const double etas[] = {0.0, 0.3, 0.8, 1.0};
  for (int trial = 0; trial < 25; ++trial) {
    const RealVector p = test::random_distribution(2 + trial % 6, rng);
    for (double eta : etas) {
      const DetectionEfficiency efficiency(eta);
      for (const OrderAlpha& alpha : kFiniteGrid) {
        const double lhs = tsallis_entropy(distorted_distribution(p, efficiency), alpha);
        const double rhs = (eta > 0.0 ? std::pow(eta, alpha.value()) : 0.0) *
                               tsallis_entropy(p, alpha) +
                           binary_tsallis(efficiency, alpha);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("binary tsallis reference values") {
  CHECK(binary_tsallis(DetectionEfficiency(0.0), OrderAlpha(1.5)) == 0.0);
  CHECK(binary_tsallis(DetectionEfficiency(1.0), OrderAlpha(0.7)) == 0.0);
  CHECK(binary_tsallis(DetectionEfficiency(0.5), OrderAlpha(2.0)) ==
        doctest::Approx(0.5).epsilon(1e-15));
  for (double eta : {0.1, 0.35, 0.62}) {
    for (const OrderAlpha& alpha : kFiniteGrid) {
      CHECK(binary_tsallis(DetectionEfficiency(eta), alpha) ==
            doctest::Approx(binary_tsallis(DetectionEfficiency(1.0 - eta), alpha))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("tsallis entropy dominates the coincidence lower bound") {
  // H_α(p) ≥ ln_α(1/I(p)) for α in (0, 2].
  Rng rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const RealVector p = test::random_distribution(2 + trial % 6, rng);
    const double ic = p.squaredNorm();
    for (double a : {0.25, 0.5, 1.0, 1.5, 2.0}) {
      CHECK(tsallis_entropy(p, OrderAlpha(a)) >= alpha_log(1.0 / ic, OrderAlpha(a)) - 1e-10);
    }
  }
}
