#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwit/eigensolver.hpp"
#include "qwit/witness.hpp"
#include "test_util.hpp"

using namespace qwit;
using namespace testutil;

namespace {

double dense_ground_energy(const PauliStringOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.to_dense(),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

PauliStringOperator site_x(int n, int site) {
  PauliString s;
  s.coefficient = 1.0;
  s.labels.assign(n, Pauli::I);
  s.labels[site] = Pauli::X;
  return PauliStringOperator(n, {s});
}

}  // namespace

TEST_CASE("two-spin Ising ground energy matches dense diagonalization") {
  const PauliStringOperator h = build_xy({2, 1.0, 1.0, 0.0});
  const GroundStateResult r = lowest_states(h, 1, 5);
  CHECK(std::abs(r.energies[0] - dense_ground_energy(h)) <= 1e-10);
  CHECK(r.residuals[0] <= 1e-8);
}

TEST_CASE("field-only chain has the all-up ground state") {
  const int n = 8;
  const PauliStringOperator h = build_xy({n, 1.0, 0.0, 0.0});
  const GroundStateResult r = lowest_states(h, 1, 5);
  CHECK(std::abs(r.energies[0] + n) <= 1e-10);
  CHECK(std::abs(std::abs(r.vectors[0][0]) - 1.0) <= 1e-8);
}

TEST_CASE("four-site two-sublattice chain matches dense diagonalization") {
  const PauliStringOperator h = build_ashkin_teller({4, 1.0, 1.0, 1.0});
  const GroundStateResult r = lowest_states(h, 1, 5);
  CHECK(std::abs(r.energies[0] - dense_ground_energy(h)) <= 1e-10);
}

TEST_CASE("Krylov and power iterations agree") {
  const PauliStringOperator h = build_xy({8, 1.0, 0.5, 0.0});
  SolverOptions lan, pow;
  pow.method = SolveMethod::power;
  pow.max_iter = 200000;
  const GroundStateResult a = lowest_states(h, 1, 5, lan);
  const GroundStateResult b = lowest_states(h, 1, 5, pow);
  CHECK(std::abs(a.energies[0] - b.energies[0]) <= 1e-8);
}

TEST_CASE("even sector of the field-only chain holds the global minimum") {
  const int n = 8;
  const PauliStringOperator h = build_xy({n, 1.0, 0.0, 0.0});
  const GroundStateResult r =
      lowest_in_sector(h, {xy_parity(n)}, {+1}, 5);
  CHECK(std::abs(r.energies[0] + n) <= 1e-9);
  CHECK(std::abs(std::abs(r.vectors[0][0]) - 1.0) <= 1e-8);
}

TEST_CASE("sector-restricted minimum equals the unrestricted one") {
  const ATParams p{4, 1.0, 1.0, 1.0};
  const PauliStringOperator h = build_ashkin_teller(p);
  auto [p1, p2] = at_parity_operators(p);
  const double global = lowest_states(h, 1, 5).energies[0];
  double best = 1e300;
  for (int s1 : {+1, -1})
    for (int s2 : {+1, -1}) {
      const GroundStateResult r = lowest_in_sector(h, {p1, p2}, {s1, s2}, 5);
      best = std::min(best, r.energies[0]);
    }
  CHECK(std::abs(best - global) <= 1e-9);
}

TEST_CASE("ordered-phase sectors are quasi-degenerate") {
  const PauliStringOperator h = build_xy({12, 0.6, 2.0, 0.0});
  const PauliStringOperator par = xy_parity(12);
  const double even = lowest_in_sector(h, {par}, {+1}, 5).energies[0];
  const double odd = lowest_in_sector(h, {par}, {-1}, 5).energies[0];
  CHECK(std::abs(even - odd) < 1e-3);
}

TEST_CASE("field-only symmetric state is the pure all-up projector") {
  const int n = 8;
  const PauliStringOperator h = build_xy({n, 0.6, 0.0, 0.0});
  const ChainEnsemble gs = symmetric_ground_state(h, {xy_parity(n)}, 5);
  REQUIRE(gs.weights.size() == 1);
  const Matrix site = gs.reduced_density({0});
  CHECK(std::abs(site(0, 0).real() - 1.0) <= 1e-9);
  CHECK(std::abs(site(1, 1).real()) <= 1e-9);
}

TEST_CASE("ordered-phase symmetric state is an unmagnetized rank-2 mixture") {
  const int n = 14;
  const PauliStringOperator h = build_xy({n, 0.6, 2.0, 0.0});
  // the measured sector splitting here is ~7e-5 in |E|~35 units, so the
  // thermal doublet needs a wider degeneracy window than the default
  GroundStateConfig cfg;
  cfg.degeneracy_tol = 1e-4;
  const ChainEnsemble gs = symmetric_ground_state(h, {xy_parity(n)}, 5, cfg);
  REQUIRE(gs.weights.size() == 2);
  CHECK(gs.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gs.expectation(site_x(n, 0)) <= 1e-9);

  // pair marginal: anti-diagonal plus diagonal only
  const Matrix pair = gs.reduced_density({0, 1});
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r != c && r + c != 3) CHECK(std::abs(pair(r, c)) <= 1e-9);
  // single-site marginal diagonal
  const Matrix site = gs.reduced_density({0});
  CHECK(std::abs(site(0, 1)) <= 1e-9);
}

TEST_CASE("marginals are site independent around the ring") {
  const int n = 10;
  const PauliStringOperator h = build_xy({n, 0.6, 1.3, 0.0});
  const ChainEnsemble gs = symmetric_ground_state(h, {xy_parity(n)}, 5);
  const Matrix first = gs.reduced_density({0});
  for (int s = 1; s < n; ++s)
    CHECK((gs.reduced_density({s}) - first).cwiseAbs().maxCoeff() <= 1e-9);
  const Matrix pair01 = gs.reduced_density({0, 1});
  const Matrix pair34 = gs.reduced_density({3, 4});
  CHECK((pair01 - pair34).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("reduced blocks agree with the dense density matrix") {
  const int n = 8;
  const PauliStringOperator h = build_xy({n, 0.8, 1.7, 0.0});
  const ChainEnsemble gs = symmetric_ground_state(h, {xy_parity(n)}, 5);
  const DensityMatrix full = gs.to_density_matrix();
  const Matrix direct = gs.reduced_density({2, 3, 4});
  const Matrix via_full = partial_trace(
      full.rho, std::vector<int>(n, 2), {2, 3, 4});
  CHECK((direct - via_full).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("strong-field symmetry-broken state is almost fully polarized") {
  const int n = 12;
  const PauliStringOperator h = build_xy({n, 1.0, 20.0, 0.0});
  const ChainEnsemble gs = broken_ground_state(h, xy_parity(n), +1, 5);
  CHECK(gs.expectation(site_x(n, 0)) > 0.99);
}

TEST_CASE("broken state factorizes at the special coupling") {
  const int n = 12;
  const PauliStringOperator h = build_xy({n, 0.6, 1.25, 0.0});
  const ChainEnsemble gs = broken_ground_state(h, xy_parity(n), +1, 5);
  const DensityMatrix pair = gs.reduced_state({0, 1});
  CHECK(witness_norm(pair) <= 1e-6);
  // purity of the two-site block: a product of pure factors
  CHECK(std::abs((pair.rho * pair.rho).trace().real() - 1.0) <= 1e-5);
}

TEST_CASE("the two broken branches are witness-equivalent") {
  const int n = 10;
  const PauliStringOperator h = build_xy({n, 0.6, 1.6, 0.0});
  GroundStateConfig cfg;
  cfg.degeneracy_tol = 1e-4;  // short chain, wider quasi-degeneracy window
  const ChainEnsemble plus = broken_ground_state(h, xy_parity(n), +1, 5, cfg);
  const ChainEnsemble minus = broken_ground_state(h, xy_parity(n), -1, 5, cfg);
  const double wp = witness_norm(plus.reduced_state({0, 1}));
  const double wm = witness_norm(minus.reduced_state({0, 1}));
  CHECK(std::abs(wp - wm) <= 1e-8);
  CHECK(plus.expectation(site_x(n, 0)) > 0.1);
  CHECK(std::abs(plus.expectation(site_x(n, 0)) +
                 minus.expectation(site_x(n, 0))) <= 1e-6);
}

TEST_CASE("broken construction rejects the gapped disordered phase") {
  const int n = 10;
  const PauliStringOperator h = build_xy({n, 0.6, 0.3, 0.0});
  CHECK_THROWS_AS(broken_ground_state(h, xy_parity(n), +1, 5),
                  std::runtime_error);
}
