#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwit/linalg.hpp"
#include "test_util.hpp"

using namespace qwit;
using namespace testutil;

TEST_CASE("kron identity factors") {
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK((kron(i2, i2) - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kron of sigma_z with itself") {
  const Matrix zz = kron(pauli_z(), pauli_z());
  Matrix expect = Matrix::Zero(4, 4);
  expect.diagonal() << 1, -1, -1, 1;
  CHECK((zz - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kron matches elementwise index oracle") {
  std::mt19937_64 rng(11);
  const Matrix a = random_matrix(rng, 3, 3);
  const Matrix b = random_matrix(rng, 2, 2);
  const Matrix k = kron(a, b);
  REQUIRE(k.rows() == 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          CHECK(std::abs(k(2 * i + p, 2 * j + q) - a(i, j) * b(p, q)) == 0.0);
}

TEST_CASE("kron associativity") {
  std::mt19937_64 rng(12);
  const Matrix a = random_matrix(rng, 2, 2);
  const Matrix b = random_matrix(rng, 3, 3);
  const Matrix c = random_matrix(rng, 2, 2);
  // each entry is the same triple product evaluated in a different
  // association order, so agreement is to one rounding step
  CHECK((kron(kron(a, b), c) - kron(a, kron(b, c))).cwiseAbs().maxCoeff() <=
        1e-15);
}

TEST_CASE("commutator of a matrix with itself vanishes") {
  std::mt19937_64 rng(13);
  const Matrix m = random_matrix(rng, 5, 5);
  CHECK(commutator(m, m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Pauli commutation relation") {
  const Matrix c = commutator(pauli_x(), pauli_y());
  CHECK((c - Complex(0, 2) * pauli_z()).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("diagonal matrices commute") {
  Matrix p = Matrix::Zero(4, 4), q = Matrix::Zero(4, 4);
  p.diagonal() << 0.1, 0.2, 0.3, 0.4;
  q.diagonal() << 4, 3, -2, 1;
  CHECK(commutator(p, q).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("commutator of Hermitian matrices is anti-Hermitian") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_hermitian(rng, 6);
    const Matrix b = random_hermitian(rng, 6);
    const Matrix c = commutator(a, b);
    CHECK((c.adjoint() + c).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(is_anti_hermitian(c, 1e-12));
  }
}

TEST_CASE("partial trace of a product state recovers a factor") {
  std::mt19937_64 rng(15);
  const Matrix ra = random_density(rng, 2);
  const Matrix rb = random_density(rng, 3);
  const Matrix out = partial_trace(kron(ra, rb), {2, 3}, {0});
  CHECK((out - ra).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("maximally entangled two-qubit marginal is maximally mixed") {
  const Matrix out = partial_trace(bell_state(), {2, 2}, {0});
  CHECK((out - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("partial trace matches brute-force index summation") {
  std::mt19937_64 rng(16);
  const Matrix r = random_density(rng, 8);
  const Matrix out = partial_trace(r, {2, 2, 2}, {0, 2});
  // keep qubits 0 and 2, sum over qubit 1 (middle bit of the index)
  Matrix oracle = Matrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int ap = 0; ap < 2; ++ap)
        for (int cp = 0; cp < 2; ++cp)
          for (int b = 0; b < 2; ++b)
            oracle(2 * a + c, 2 * ap + cp) +=
                r(4 * a + 2 * b + c, 4 * ap + 2 * b + cp);
  CHECK((out - oracle).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("partial trace over everything is the scalar trace") {
  std::mt19937_64 rng(17);
  const Matrix r = random_matrix(rng, 6, 6);
  const Matrix out = partial_trace(r, {2, 3}, {});
  REQUIRE(out.rows() == 1);
  CHECK(std::abs(out(0, 0) - r.trace()) <= 1e-13);
}

TEST_CASE("trace norm of the zero matrix") {
  CHECK(trace_norm(Matrix::Zero(3, 3)) == 0.0);
}

TEST_CASE("trace norm of a diagonal matrix") {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 1, -2, 3;
  CHECK(trace_norm(d) == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("Hermitian-eig route matches the SVD route") {
  std::mt19937_64 rng(18);
  for (int t = 0; t < 30; ++t) {
    const Matrix m = random_matrix(rng, 7, 7);
    const Matrix anti = (m - m.adjoint()) / 2.0;
    CHECK(std::abs(trace_norm(anti) - trace_norm_svd(anti)) <= 1e-10);
    const Matrix herm = (m + m.adjoint()) / 2.0;
    CHECK(std::abs(trace_norm(herm) - trace_norm_svd(herm)) <= 1e-10);
  }
}

TEST_CASE("trace norm is unitarily invariant") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 10; ++t) {
    const Matrix m = random_matrix(rng, 6, 6);
    const Matrix u = random_unitary(rng, 6);
    CHECK(std::abs(trace_norm(u * m * u.adjoint()) - trace_norm(m)) <= 1e-10);
  }
}

TEST_CASE("hermitian_eigs returns a descending orthonormal decomposition") {
  std::mt19937_64 rng(20);
  const Matrix m = random_hermitian(rng, 8);
  const Spectrum s = hermitian_eigs(m);
  for (int i = 0; i + 1 < 8; ++i) CHECK(s.eigenvalues[i] >= s.eigenvalues[i + 1]);
  const Matrix recon =
      s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
  CHECK((recon - m).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((s.eigenvectors.adjoint() * s.eigenvectors - Matrix::Identity(8, 8))
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
}
