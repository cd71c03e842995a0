#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qwit/linalg.hpp"

namespace qwit {

enum class Pauli : uint8_t { I, X, Y, Z };

/// One weighted tensor product of single-site Paulis over the whole chain.
struct PauliString {
  double coefficient = 0.0;
  std::vector<Pauli> labels;  // one per site
};

/// Hermitian operator as a sum of Pauli strings, with a matrix-free matvec.
/// Site s occupies bit (n_spins-1-s) of a basis index; bit value 0 is spin
/// up (sigma_z = +1). This matches building the dense matrix by Kronecker
/// products with site 0 leftmost.
class PauliStringOperator {
 public:
  PauliStringOperator(int n_spins, std::vector<PauliString> terms);

  int n_spins() const { return n_spins_; }
  Eigen::Index dim() const { return Eigen::Index(1) << n_spins_; }
  const std::vector<PauliString>& terms() const { return terms_; }

  /// out = H * v (out is overwritten).
  void apply(const Vector& v, Vector& out) const;
  Vector matvec(const Vector& v) const;

  /// Dense materialization; guarded to n_spins <= 12.
  Matrix to_dense() const;

  /// Sum of |coefficients|; upper bound on the spectral radius.
  double norm_bound() const;

 private:
  struct CompiledTerm {
    uint64_t x_mask = 0;     // bits flipped (X and Y sites)
    uint64_t sign_mask = 0;  // bits contributing -1 (Z and Y sites)
    Complex amplitude;       // coefficient * i^{#Y}
  };

  int n_spins_;
  std::vector<PauliString> terms_;
  std::vector<CompiledTerm> compiled_;
};

struct XYParams {
  int n_spins = 8;
  double gamma = 1.0;        // anisotropy, [0, 1]
  double lambda = 1.0;       // J/h, >= 0
  double pinning_eps = 0.0;  // longitudinal sigma_x field, units of h
};

struct ATParams {
  int n_sites = 4;       // M; the chain carries 2M spin-1/2 particles
  double beta = 1.0;
  double delta = 1.0;
  double coupling = 1.0;  // J

  int n_spins() const { return 2 * n_sites; }
};

/// XY chain, Eq. of motion -sum{ (lambda/2)[(1+g) XX + (1-g) YY] + Z },
/// periodic, h = 1; adds -eps sum X when pinning_eps > 0.
PauliStringOperator build_xy(const XYParams& p);

/// Quantum Ashkin-Teller chain on 2M spins, sigma_j -> spin 2j,
/// tau_j -> spin 2j+1, periodic.
PauliStringOperator build_ashkin_teller(const ATParams& p);

/// Z2 parity of the XY chain: tensor product of sigma_z over all sites.
PauliStringOperator xy_parity(int n_spins);

/// (P1, P2) = (x sigma_j^x, x tau_j^x) of the Ashkin-Teller chain.
std::pair<PauliStringOperator, PauliStringOperator> at_parity_operators(
    const ATParams& p);

}  // namespace qwit
