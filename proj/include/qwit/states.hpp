#pragma once

#include <vector>

#include "qwit/linalg.hpp"

namespace qwit {

/// Ordered list of party dimensions inside a composite space.
struct Partition {
  std::vector<int> dims;

  int n_parties() const { return static_cast<int>(dims.size()); }
  Eigen::Index total_dim() const;
  void validate() const;

  static Partition qubits(int n);
};

struct DensityMatrix {
  Matrix rho;
  Partition partition;

  /// Validates Hermiticity (1e-12), unit trace (1e-12) and positivity
  /// (min eigenvalue >= -1e-10).
  static DensityMatrix checked(Matrix m, Partition p);
  /// Skips the physicality checks; for algebraic tests on non-PSD matrices.
  static DensityMatrix unchecked(Matrix m, Partition p);
};

/// One complete set of rank-1 orthogonal projectors per party, stored as the
/// unit vectors spanning them.
struct LocalMeasurement {
  std::vector<std::vector<Vector>> party_vectors;

  int n_parties() const { return static_cast<int>(party_vectors.size()); }
  /// Columns of party k's block are that party's basis vectors.
  Matrix joint_unitary() const;
  /// Joint projector for a flat outcome index (mixed radix over parties).
  Matrix joint_projector(Eigen::Index outcome) const;
  Eigen::Index n_outcomes() const;
  bool matches(const Partition& p) const;
  /// Orthonormality/completeness to 1e-12.
  void validate() const;
};

struct BlochAngles {
  double theta = 0.0;  // polar, [0, pi]
  double phi = 0.0;    // azimuth, [0, 2pi)
};

/// Qubit-party measurement parameterized by one Bloch direction per party;
/// the projectors are onto +/- that direction.
struct MeasurementAngles {
  std::vector<BlochAngles> angles;

  LocalMeasurement to_measurement() const;
};

LocalMeasurement computational_basis(const Partition& p);

/// Non-selective local projective measurement: sum_j Pi_j rho Pi_j.
DensityMatrix apply_measurement(const DensityMatrix& rho,
                                const LocalMeasurement& m);

/// rho = sum_j p_j Pi_j; probs must be nonnegative and sum to 1 (1e-12).
DensityMatrix make_classical_state(const Partition& p,
                                   const LocalMeasurement& m,
                                   const std::vector<double>& probs);

/// True iff the measurement leaves rho undisturbed in trace norm.
bool is_classical_under(const DensityMatrix& rho, const LocalMeasurement& m,
                        double tol = 1e-9);

/// max_j || [rho, Pi_j] ||_1, the eigenprojector route to classicality.
double max_projector_commutator_norm(const DensityMatrix& rho,
                                     const LocalMeasurement& m);

/// Product of the single-party marginals, in party order.
Matrix marginal_product(const DensityMatrix& rho);

struct Theorem2Report {
  double phi_distance = 0.0;             // ||Phi(rho) - rho||_1
  double marginal_commutator_norm = 0.0; // ||[rho, x_i rho_Ai]||_1
  bool implication_holds = true;         // first ~ 0 => second ~ 0
};

Theorem2Report check_theorem2(const DensityMatrix& rho,
                              const LocalMeasurement& m);

}  // namespace qwit
