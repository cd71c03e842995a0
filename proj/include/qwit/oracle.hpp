#pragma once

#include <cstdint>
#include <vector>

#include "qwit/states.hpp"
#include "qwit/witness.hpp"

namespace qwit {

struct OracleConfig {
  int coarse_grid = 24;       // grid points per angle (exhaustive for <= 2 parties)
  int refine_iterations = 60; // Nelder-Mead iterations per start
  int restarts = 8;
  double tol = 1e-8;          // early-exit threshold
  uint64_t seed = 12345;
};

struct OracleResult {
  double distance = 0.0;            // best ||rho - Phi(rho)||_1 found
  MeasurementAngles argmin;
  double grid_lower_bound = 0.0;    // min over the coarse grid alone
  bool grid_was_exhaustive = false; // full grid vs random sample
};

/// min over per-party Bloch measurement bases of ||rho - Phi(rho)||_1.
/// Zero (up to tol) iff a nondisturbing basis was found; the returned value
/// is always an upper bound on the true minimum. All parties must be qubits
/// and the total dimension at most 2^8.
OracleResult classicality_distance(const DensityMatrix& rho,
                                   const OracleConfig& cfg = {});

struct SufficiencyReport {
  double witness = 0.0;
  double distance = 0.0;
  bool implication_holds = true;  // witness > 10 tol => distance > tol
};

/// Checks that a strictly positive witness is matched by a strictly
/// positive classicality distance.
SufficiencyReport certify_witness_sufficiency(const DensityMatrix& rho,
                                              const OracleConfig& cfg = {});

}  // namespace qwit
