#pragma once

#include "qwit/states.hpp"

namespace qwit {

/// Entries of the Z2-symmetric two-qubit X-state
///   ( a  0  0  f )
///   ( 0 b1  z  0 )
///   ( 0  z b2  0 )
///   ( f  0  0  d )
struct XStateParams {
  double a = 0, b1 = 0, b2 = 0, d = 0, z = 0, f = 0;

  Matrix to_matrix() const;
  DensityMatrix to_density_matrix() const;  // checked
  /// Unit trace, nonnegative diagonal, |z| <= sqrt(b1 b2), |f| <= sqrt(ad)
  /// (all to 1e-12).
  void validate() const;
};

/// Translation-invariant spin-pair correlators. G_x and G_xz are only
/// nonzero for symmetry-broken states.
struct CorrelatorSet {
  double G_z = 0;   // <sigma_z>
  double G_xx = 0;  // <sigma^i_x sigma^j_x>
  double G_yy = 0;
  double G_zz = 0;
  double G_x = 0;   // <sigma^i_x>, SSB only
  double G_xz = 0;  // <sigma^i_x sigma^{i+1}_z>, SSB only
};

/// W = [rho, rho_A1 x ... x rho_AN]; anti-Hermitian and traceless.
Matrix witness_operator(const DensityMatrix& rho);

/// ||W||_1; positive value is sufficient for nonclassicality.
double witness_norm(const DensityMatrix& rho);

/// Correlator -> X-state map (translation invariance, b1 = b2). Clips
/// eigenvalues down to -1e-9 and renormalizes; larger violations throw.
XStateParams xstate_from_correlators(const CorrelatorSet& c);

/// Closed form 1/2 |G_xx - G_yy| |G_z| for the Z2-symmetric X-state.
double xstate_witness_norm(const CorrelatorSet& c);

struct ClassicalityFlags {
  bool zero_magnetization = false;  // |G_z| <= tol
  bool xy_isotropy = false;         // |G_xx - G_yy| <= tol
};

ClassicalityFlags classicality_conditions(const CorrelatorSet& c, double tol);

}  // namespace qwit
