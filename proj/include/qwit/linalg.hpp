#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qwit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dimension products beyond this are rejected by kron().
inline constexpr Eigen::Index kKronDimCap = Eigen::Index(1) << 22;

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending,
/// eigenvectors as orthonormal columns.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Matrix eigenvectors;
};

bool is_hermitian(const Matrix& m, double tol = 1e-12);
bool is_anti_hermitian(const Matrix& m, double tol = 1e-12);

Matrix kron(const Matrix& a, const Matrix& b);

/// ab - ba; throws on dimension mismatch.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Trace out every subsystem not listed in `keep`. `dims` are the party
/// dimensions in tensor order (leftmost factor = slowest index).
Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep);

/// Sum of singular values. Anti-Hermitian and Hermitian inputs go through a
/// Hermitian eigendecomposition; everything else falls back to an SVD.
double trace_norm(const Matrix& m);

/// SVD route, kept separate so it can serve as an independent oracle.
double trace_norm_svd(const Matrix& m);

/// Symmetrizes the input as (M + M^dag)/2 before decomposing.
Spectrum hermitian_eigs(const Matrix& m);

}  // namespace qwit
