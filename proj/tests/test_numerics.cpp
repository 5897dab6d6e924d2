#include "etf/numerics.hpp"

#include "etf/frames.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace etf;

namespace {

ComplexVector basis_ket(int dim, int index) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

// Index-expansion oracle: builds the tensor product entry by entry from the
// definition, independent of kron().
ComplexMatrix kron_by_indices(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
    }
  }
  return out;
}

}  // namespace

TEST_CASE("inner products of basis vectors") {
  CHECK(inner(basis_ket(3, 0), basis_ket(3, 0)) == Complex(1.0, 0.0));
  CHECK(inner(basis_ket(3, 0), basis_ket(3, 1)) == Complex(0.0, 0.0));
}

TEST_CASE("inner rejects dimension mismatch") {
  CHECK_THROWS_AS(inner(basis_ket(2, 0), basis_ket(3, 0)), std::invalid_argument);
}

TEST_CASE("inner is conjugate-linear in the first argument") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexVector u = random_ket(4, rng);
    const ComplexVector v = random_ket(4, rng);
    CHECK(std::abs(inner(u, v) - std::conj(inner(v, u))) < 1e-14);
    const Complex scale(0.3, -1.2);
    CHECK(std::abs(inner(ComplexVector(scale * u), v) - std::conj(scale) * inner(u, v)) <
          1e-14);
    CHECK(std::abs(inner(u, u).real() - u.squaredNorm()) < 1e-14);
  }
}

TEST_CASE("simplex d=2 vectors have squared overlap 1/4") {
  const EquiangularTightFrame frame = simplex_etf(2);
  const double expected = (3.0 - 2.0) / ((3.0 - 1.0) * 2.0);  // (n−d)/((n−1)d)
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      CHECK(std::norm(inner(frame.vector(i), frame.vector(j))) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("conjugate_ket basics") {
  ComplexVector v(2);
  v << Complex(0.6, 0.0), Complex(0.8, 0.0);
  CHECK((conjugate_ket(v) - v).norm() == 0.0);

  ComplexVector w(2);
  w << Complex(0.0, 1.0), Complex(0.0, 0.0);
  CHECK(conjugate_ket(w)(0) == Complex(0.0, -1.0));

  Rng rng(3);
  const ComplexVector u = random_ket(5, rng);
  CHECK((conjugate_ket(conjugate_ket(u)) - u).norm() == 0.0);
  const ComplexVector x = random_ket(5, rng);
  CHECK(std::abs(inner(conjugate_ket(u), conjugate_ket(x)) - inner(x, u)) < 1e-14);
}

TEST_CASE("kron of identities and kets") {
  const ComplexMatrix eye2 = ComplexMatrix::Identity(2, 2);
  CHECK(max_abs(kron(eye2, eye2) - ComplexMatrix::Identity(4, 4)) == 0.0);

  Rng rng(5);
  const ComplexVector u = 1.7 * random_ket(3, rng);
  const ComplexVector v = 0.4 * random_ket(2, rng);
  CHECK(kron(u, v).norm() == doctest::Approx(u.norm() * v.norm()).epsilon(1e-14));
}

TEST_CASE("kron matches the index-expansion oracle and multiplicativity") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = ginibre_matrix(2, 2, rng);
    const ComplexMatrix b = ginibre_matrix(3, 3, rng);
    const ComplexMatrix k = kron(a, b);
    CHECK(max_abs(k - kron_by_indices(a, b)) == 0.0);
    CHECK(std::abs(k.trace() - a.trace() * b.trace()) < 1e-12);

    const ComplexVector u = random_ket(2, rng);
    const ComplexVector v = random_ket(3, rng);
    CHECK((k * kron(u, v) - kron(ComplexVector(a * u), ComplexVector(b * v))).norm() < 1e-12);
  }
}

TEST_CASE("purity of reference states") {
  CHECK(purity(DensityMatrix(0.5 * ComplexMatrix::Identity(2, 2))) == doctest::Approx(0.5));

  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 0.75;
  diag(1, 1) = 0.25;
  CHECK(purity(DensityMatrix(diag)) == doctest::Approx(0.75 * 0.75 + 0.25 * 0.25));

  Rng rng(9);
  const ComplexVector psi = random_ket(4, rng);
  CHECK(purity(DensityMatrix(psi * psi.adjoint())) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("density validation catches defects") {
  ComplexMatrix not_unit_trace = 0.7 * ComplexMatrix::Identity(2, 2);
  CHECK_FALSE(density_defect(not_unit_trace).empty());
  CHECK_THROWS_AS((DensityMatrix{not_unit_trace}), std::invalid_argument);

  ComplexMatrix not_hermitian = 0.5 * ComplexMatrix::Identity(2, 2);
  not_hermitian(0, 1) = Complex(0.0, 0.3);
  CHECK_FALSE(density_defect(not_hermitian).empty());

  ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_FALSE(density_defect(negative).empty());

  CHECK(density_defect(0.5 * ComplexMatrix::Identity(2, 2)).empty());
}

TEST_CASE("random_density determinism and validity") {
  const DensityMatrix a = random_density(4, 2, 42);
  const DensityMatrix b = random_density(4, 2, 42);
  CHECK(max_abs(a.matrix() - b.matrix()) == 0.0);

  const DensityMatrix c = random_density(4, 2, 43);
  CHECK(max_abs(a.matrix() - c.matrix()) > 1e-3);

  CHECK(purity(random_density(5, 1, 7)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(density_defect(random_density(4, 4, 0).matrix(), 1e-10).empty());

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int d = 2 + static_cast<int>(seed % 5);
    const int rank = 1 + static_cast<int>(seed % d);
    CHECK(density_defect(random_density(d, rank, seed).matrix(), 1e-10).empty());
  }

  CHECK_THROWS_AS(random_density(3, 0, 0), std::out_of_range);
  CHECK_THROWS_AS(random_density(3, 4, 0), std::out_of_range);
}

TEST_CASE("complete_to_unitary on a basis row") {
  ComplexMatrix row = ComplexMatrix::Zero(1, 2);
  row(0, 0) = 1.0;
  const ComplexMatrix block = complete_to_unitary(row);
  REQUIRE(block.rows() == 1);
  REQUIRE(block.cols() == 2);
  // Output spans e2 up to a phase.
  CHECK(std::abs(block(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(block(0, 0)) < 1e-12);
}

TEST_CASE("complete_to_unitary yields unitary stackings on random inputs") {
  Rng rng(13);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + trial % 5;
    const int d = 1 + trial % (n - 1);
    // Test-side generator: orthonormal rows from a QR factorization.
    Eigen::HouseholderQR<ComplexMatrix> qr(ginibre_matrix(n, n, rng));
    const ComplexMatrix q = qr.householderQ();
    const ComplexMatrix rows = q.adjoint().topRows(d);

    const ComplexMatrix block = complete_to_unitary(rows);
    REQUIRE(block.rows() == n - d);
    ComplexMatrix stacked(n, n);
    stacked.topRows(d) = rows;
    stacked.bottomRows(n - d) = block;
    CHECK(max_abs(stacked * stacked.adjoint() - ComplexMatrix::Identity(n, n)) <= 1e-10);
  }
}

TEST_CASE("complete_to_unitary edge cases") {
  Rng rng(17);
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre_matrix(4, 4, rng));
  const ComplexMatrix q = qr.householderQ();
  const ComplexMatrix rows = q.adjoint().topRows(3);
  const ComplexMatrix block = complete_to_unitary(rows);
  REQUIRE(block.rows() == 1);
  CHECK(block.row(0).norm() == doctest::Approx(1.0).epsilon(1e-12));

  // Not orthonormal: scaled row.
  ComplexMatrix bad = rows;
  bad.row(0) *= 0.9;
  CHECK_THROWS_AS(complete_to_unitary(bad), std::invalid_argument);

  // d >= n.
  CHECK_THROWS_AS(complete_to_unitary(q.adjoint()), std::invalid_argument);
}
