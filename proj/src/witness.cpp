#include "qwit/witness.hpp"

#include <cmath>
#include <stdexcept>

namespace qwit {

Matrix XStateParams::to_matrix() const {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = a;
  m(1, 1) = b1;
  m(2, 2) = b2;
  m(3, 3) = d;
  m(1, 2) = m(2, 1) = z;
  m(0, 3) = m(3, 0) = f;
  return m;
}

DensityMatrix XStateParams::to_density_matrix() const {
  validate();
  return DensityMatrix::checked(to_matrix(), Partition::qubits(2));
}

void XStateParams::validate() const {
  const double tol = 1e-12;
  if (std::abs(a + b1 + b2 + d - 1.0) > tol)
    throw std::invalid_argument("XStateParams: trace != 1");
  if (a < -tol || b1 < -tol || b2 < -tol || d < -tol)
    throw std::invalid_argument("XStateParams: negative diagonal");
  if (std::abs(z) > std::sqrt(std::max(0.0, b1 * b2)) + tol)
    throw std::invalid_argument("XStateParams: |z| > sqrt(b1 b2)");
  if (std::abs(f) > std::sqrt(std::max(0.0, a * d)) + tol)
    throw std::invalid_argument("XStateParams: |f| > sqrt(a d)");
}

Matrix witness_operator(const DensityMatrix& rho) {
  if (rho.partition.n_parties() < 2)
    throw std::invalid_argument("witness_operator: need at least 2 parties");
  return commutator(rho.rho, marginal_product(rho));
}

double witness_norm(const DensityMatrix& rho) {
  return trace_norm(witness_operator(rho));
}

XStateParams xstate_from_correlators(const CorrelatorSet& c) {
  XStateParams x;
  x.a = 0.25 * (1.0 + 2.0 * c.G_z + c.G_zz);
  x.b1 = x.b2 = 0.25 * (1.0 - c.G_zz);
  x.d = 0.25 * (1.0 - 2.0 * c.G_z + c.G_zz);
  x.z = 0.25 * (c.G_xx + c.G_yy);
  x.f = 0.25 * (c.G_xx - c.G_yy);

  // Positivity: clip small negative eigenvalues (finite-size correlator
  // noise), reject anything below -1e-9.
  Spectrum s = hermitian_eigs(x.to_matrix());
  const double min_eig = s.eigenvalues.minCoeff();
  if (min_eig < -1e-9)
    throw std::invalid_argument("xstate_from_correlators: unphysical correlators");
  if (min_eig < 0.0) {
    Eigen::VectorXd clipped = s.eigenvalues.cwiseMax(0.0);
    clipped /= clipped.sum();
    Matrix m = s.eigenvectors * clipped.asDiagonal() * s.eigenvectors.adjoint();
    x.a = m(0, 0).real();
    x.b1 = m(1, 1).real();
    x.b2 = m(2, 2).real();
    x.d = m(3, 3).real();
    x.z = m(1, 2).real();
    x.f = m(0, 3).real();
  }
  return x;
}

double xstate_witness_norm(const CorrelatorSet& c) {
  return 0.5 * std::abs(c.G_xx - c.G_yy) * std::abs(c.G_z);
}

ClassicalityFlags classicality_conditions(const CorrelatorSet& c, double tol) {
  ClassicalityFlags flags;
  flags.zero_magnetization = std::abs(c.G_z) <= tol;
  flags.xy_isotropy = std::abs(c.G_xx - c.G_yy) <= tol;
  return flags;
}

}  // namespace qwit
