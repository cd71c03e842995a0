#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qwit/pauli.hpp"
#include "qwit/states.hpp"

namespace qwit {

enum class SolveMethod { lanczos, power };

enum class GroundStateKind { symmetric_thermal, broken_plus, broken_minus, raw_lowest };

struct SolverOptions {
  SolveMethod method = SolveMethod::lanczos;
  int max_iter = 5000;        // power-method iterations / Lanczos restarts cap
  int krylov_dim = 200;
  double tol = 1e-10;         // residual relative to norm_bound()
};

struct ConvergenceError : std::runtime_error {
  double residual;
  ConvergenceError(const std::string& what, double r)
      : std::runtime_error(what), residual(r) {}
};

struct GroundStateResult {
  std::vector<double> energies;   // ascending
  std::vector<Vector> vectors;
  std::vector<double> residuals;  // ||Hv - Ev||
  std::vector<std::vector<int>> sector_labels;  // parity signs, empty if none
};

/// k lowest eigenpairs via Lanczos with full reorthogonalization (default)
/// or the shifted power method. Deterministic for a given seed.
GroundStateResult lowest_states(const PauliStringOperator& op, int k,
                                uint64_t seed, SolverOptions opts = {});

/// Lowest eigenpair restricted to the joint parity eigenspace picked out by
/// `signs`; the projector prod_k (I + s_k P_k)/2 is applied every iteration.
GroundStateResult lowest_in_sector(const PauliStringOperator& op,
                                   const std::vector<PauliStringOperator>& parities,
                                   const std::vector<int>& signs, uint64_t seed,
                                   SolverOptions opts = {});

/// Low-rank ground-state density operator: mixture of a few pure chain
/// states. Keeps 2^n x 2^n matrices out of memory; reduced blocks are built
/// directly from the vectors.
struct ChainEnsemble {
  int n_spins = 0;
  std::vector<double> weights;
  std::vector<Vector> vectors;
  double energy = 0.0;      // lowest energy in the mixture
  double sector_gap = 0.0;  // energy spread across contributing sectors
  double residual = 0.0;    // worst eigenpair residual

  /// Reduced density matrix on the listed sites (ascending order kept).
  Matrix reduced_density(const std::vector<int>& sites) const;
  /// Reduced state with one qubit party per listed site.
  DensityMatrix reduced_state(const std::vector<int>& sites) const;
  double expectation(const PauliStringOperator& op) const;
  /// Dense density matrix; guarded to n_spins <= 10.
  DensityMatrix to_density_matrix() const;
};

struct GroundStateConfig {
  double degeneracy_tol = 1e-6;  // in units of |ground energy|
  SolverOptions solver;
};

/// Thermal (parity-symmetric) ground state: the equal mixture of the
/// quasi-degenerate sector ground states, or the pure unique ground state.
ChainEnsemble symmetric_ground_state(const PauliStringOperator& op,
                                     const std::vector<PauliStringOperator>& parities,
                                     uint64_t seed,
                                     GroundStateConfig cfg = {});

/// Symmetry-broken pure state (g0 +/- e^{i chi} g1)/sqrt(2) with the phase
/// aligned to maximize the sigma_x magnetization. Throws when the sector
/// gap is above degeneracy_tol (no SSB) or when the magnetization vanishes
/// identically.
ChainEnsemble broken_ground_state(const PauliStringOperator& op,
                                  const PauliStringOperator& parity, int sign,
                                  uint64_t seed, GroundStateConfig cfg = {});

}  // namespace qwit
