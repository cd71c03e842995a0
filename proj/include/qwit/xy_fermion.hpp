#pragma once

#include <vector>

#include "qwit/witness.hpp"

namespace qwit {

/// Free-fermion solution of the periodic XY chain at T=0 on a large ring:
/// Jordan-Wigner map, then per-momentum 2x2 Bogoliubov diagonalization.
struct FermionRing {
  int n_modes = 2048;
  double lambda = 1.0;
  double gamma = 1.0;
  bool antiperiodic = true;  // grid that won the energy comparison

  // paired momenta k > 0 (the -k partner is implicit)
  std::vector<double> momenta;
  std::vector<double> dispersion;      // E_k >= 0
  std::vector<double> occupation;      // <n_k> = <n_-k>
  std::vector<Complex> pair_amplitude; // <c^dag_k c^dag_-k>

  // unpaired modes (k = 0, pi on the periodic grid)
  std::vector<double> unpaired_momenta;
  std::vector<double> unpaired_occupation;

  double energy_density = 0.0;
};

FermionRing solve_ring(double lambda, double gamma, int n_modes = 2048);

/// Fermionic contraction functions, with A_j = c^dag_j + c_j and
/// B_j = c^dag_j - c_j: contraction_BA(r) = <B_0 A_r>, etc.
double contraction_BA(const FermionRing& ring, int r);
double contraction_AA(const FermionRing& ring, int r);
double contraction_BB(const FermionRing& ring, int r);

/// Nearest-neighbor correlators of the Z2-symmetric ground state,
/// assembled by Wick's theorem. G_x = G_xz = 0 identically.
CorrelatorSet symmetric_correlators(const FermionRing& ring);

/// lambda_f = 1/sqrt(1 - gamma^2); +infinity for gamma >= 1.
double factorization_point(double gamma);

/// Per-lambda witness of the symmetric state on the free-fermion path.
std::vector<std::pair<double, double>> symmetric_witness_curve(
    double gamma, const std::vector<double>& lambda_grid, int n_modes = 2048);

}  // namespace qwit
