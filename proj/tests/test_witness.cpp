#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwit/eigensolver.hpp"
#include "qwit/witness.hpp"
#include "test_util.hpp"

using namespace qwit;
using namespace testutil;

namespace {

// a, b, d >= 0 with a + 2b + d = 1, |z| <= b, |f| <= sqrt(ad)
XStateParams random_xstate(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double a = u01(rng), b = u01(rng), d = u01(rng);
  const double s = a + 2.0 * b + d;
  a /= s;
  b /= s;
  d /= s;
  XStateParams x;
  x.a = a;
  x.b1 = x.b2 = b;
  x.d = d;
  x.z = (2.0 * u01(rng) - 1.0) * b;
  x.f = (2.0 * u01(rng) - 1.0) * std::sqrt(a * d);
  return x;
}

CorrelatorSet correlators_of(const XStateParams& x) {
  CorrelatorSet c;
  c.G_z = x.a - x.d;
  c.G_xx = 2.0 * (x.z + x.f);
  c.G_yy = 2.0 * (x.z - x.f);
  c.G_zz = 1.0 - 4.0 * x.b1;
  return c;
}

}  // namespace

TEST_CASE("product states are undetected") {
  std::mt19937_64 rng(31);
  const Matrix ra = random_density(rng, 2);
  const Matrix rb = random_density(rng, 2);
  const DensityMatrix rho =
      DensityMatrix::checked(kron(ra, rb), Partition::qubits(2));
  CHECK(witness_operator(rho).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(witness_norm(rho) <= 1e-12);
}

TEST_CASE("maximally entangled two-qubit state is a false negative") {
  const DensityMatrix rho =
      DensityMatrix::checked(bell_state(), Partition::qubits(2));
  CHECK(witness_operator(rho).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(witness_norm(rho) <= 1e-14);
}

TEST_CASE("three-qubit GHZ state is a false negative") {
  Vector v = Vector::Zero(8);
  v[0] = v[7] = 1.0 / std::sqrt(2.0);
  const DensityMatrix rho =
      DensityMatrix::checked(v * v.adjoint(), Partition::qubits(3));
  CHECK(witness_operator(rho).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("witness vanishes on constructed classical states") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 100; ++t) {
    const int np = 2 + static_cast<int>(t % 2);
    const LocalMeasurement m = random_angles(rng, np).to_measurement();
    const DensityMatrix rho = make_classical_state(
        Partition::qubits(np), m, random_probs(rng, 1 << np));
    CHECK(witness_norm(rho) <= 1e-10);
  }
}

TEST_CASE("Werner family is undetected for every mixing weight") {
  Vector singlet = Vector::Zero(4);
  singlet[1] = 1.0 / std::sqrt(2.0);
  singlet[2] = -1.0 / std::sqrt(2.0);
  const Matrix proj = singlet * singlet.adjoint();
  for (double p = 0.0; p <= 1.0; p += 0.1) {
    const Matrix w = p * proj + (1.0 - p) * Matrix::Identity(4, 4) / 4.0;
    CHECK(witness_norm(DensityMatrix::checked(w, Partition::qubits(2))) <=
          1e-12);
  }
}

TEST_CASE("anisotropic magnetized correlators give 0.1") {
  // This correlator set slightly violates positivity, so the matrix is
  // assembled unchecked; the commutator algebra is insensitive to that.
  CorrelatorSet c;
  c.G_z = 0.5;
  c.G_xx = 0.6;
  c.G_yy = 0.2;
  c.G_zz = 0.3;
  CHECK(xstate_witness_norm(c) == doctest::Approx(0.1).epsilon(1e-12));

  XStateParams x;
  x.a = (1.0 + 2.0 * c.G_z + c.G_zz) / 4.0;
  x.b1 = x.b2 = (1.0 - c.G_zz) / 4.0;
  x.d = (1.0 - 2.0 * c.G_z + c.G_zz) / 4.0;
  x.z = (c.G_xx + c.G_yy) / 4.0;
  x.f = (c.G_xx - c.G_yy) / 4.0;
  const DensityMatrix rho =
      DensityMatrix::unchecked(x.to_matrix(), Partition::qubits(2));
  CHECK(witness_norm(rho) == doctest::Approx(0.1).epsilon(1e-10));
}

TEST_CASE("closed form agrees with the matrix path") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 2000; ++t) {
    const XStateParams x = random_xstate(rng);
    const CorrelatorSet c = correlators_of(x);
    const double closed = xstate_witness_norm(c);
    const double direct = witness_norm(
        DensityMatrix::checked(x.to_matrix(), Partition::qubits(2)));
    CHECK(std::abs(closed - direct) <= 1e-12);
  }
}

TEST_CASE("commutator has the corner form") {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 200; ++t) {
    const XStateParams x = random_xstate(rng);
    const DensityMatrix rho =
        DensityMatrix::checked(x.to_matrix(), Partition::qubits(2));
    const Matrix w = witness_operator(rho);
    const double b = x.b1;
    const double k =
        x.f * ((b + x.d) * (b + x.d) - (x.a + b) * (x.a + b));
    CHECK(std::abs(w(0, 3) - Complex(k, 0)) <= 1e-13);
    CHECK(std::abs(w(3, 0) + Complex(k, 0)) <= 1e-13);
    Matrix rest = w;
    rest(0, 3) = rest(3, 0) = 0.0;
    CHECK(rest.cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("witness norm is covariant under local unitaries") {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho =
        DensityMatrix::checked(random_density(rng, 4), Partition::qubits(2));
    const Matrix u = kron(random_unitary(rng, 2), random_unitary(rng, 2));
    const DensityMatrix rot = DensityMatrix::checked(
        u * rho.rho * u.adjoint(), Partition::qubits(2));
    CHECK(std::abs(witness_norm(rot) - witness_norm(rho)) <= 1e-10);
  }
}

TEST_CASE("correlator-to-matrix map on forced cases") {
  {
    CorrelatorSet c;
    c.G_z = 1.0;
    c.G_zz = 1.0;
    const XStateParams x = xstate_from_correlators(c);
    CHECK(x.a == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(x.b1) <= 1e-14);
    CHECK(std::abs(x.d) <= 1e-14);
    CHECK(std::abs(x.z) <= 1e-14);
    CHECK(std::abs(x.f) <= 1e-14);
  }
  {
    CorrelatorSet c;
    c.G_zz = -1.0;
    c.G_xx = 1.0;
    c.G_yy = 1.0;
    const XStateParams x = xstate_from_correlators(c);
    CHECK(x.b1 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(x.b2 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(x.z == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(x.a) <= 1e-14);
    CHECK(std::abs(x.d) <= 1e-14);
  }
}

TEST_CASE("correlator map reproduces the chain's reduced pair state") {
  const XYParams p{12, 1.0, 1.0, 0.0};
  const PauliStringOperator h = build_xy(p);
  const ChainEnsemble gs =
      symmetric_ground_state(h, {xy_parity(p.n_spins)}, 99);
  const Matrix pair = gs.reduced_density({0, 1});
  CorrelatorSet c;
  c.G_z = (pair * kron(pauli_z(), pauli_i())).trace().real();
  c.G_xx = (pair * kron(pauli_x(), pauli_x())).trace().real();
  c.G_yy = (pair * kron(pauli_y(), pauli_y())).trace().real();
  c.G_zz = (pair * kron(pauli_z(), pauli_z())).trace().real();
  const XStateParams x = xstate_from_correlators(c);
  CHECK((x.to_matrix() - pair).cwiseAbs().maxCoeff() <= 1e-3);
}

TEST_CASE("zero-witness conditions on correlators") {
  CorrelatorSet c;
  c.G_z = 0.7;
  c.G_xx = 0.3;
  c.G_yy = 0.3;  // isotropic plane
  CHECK(xstate_witness_norm(c) == 0.0);
  CHECK(classicality_conditions(c, 1e-9).xy_isotropy);

  CorrelatorSet c2;
  c2.G_xx = 0.9;
  c2.G_yy = -0.2;  // zero magnetization
  CHECK(xstate_witness_norm(c2) == 0.0);
  CHECK(classicality_conditions(c2, 1e-9).zero_magnetization);

  CorrelatorSet c3;
  c3.G_z = 0.3;
  c3.G_xx = 0.5;
  c3.G_yy = 0.3;
  const ClassicalityFlags fl = classicality_conditions(c3, 1e-9);
  CHECK_FALSE(fl.zero_magnetization);
  CHECK_FALSE(fl.xy_isotropy);
}
