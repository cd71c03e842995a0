#include "qwit/linalg.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qwit {

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_anti_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m + m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > kKronDimCap || cols > kKronDimCap)
    throw std::invalid_argument("kron: dimension product exceeds cap");
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("commutator: dimension mismatch");
  return a * b - b * a;
}

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  const int n_parties = static_cast<int>(dims.size());
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("partial_trace: bad dimension");
    total *= d;
  }
  if (m.rows() != total || m.cols() != total)
    throw std::invalid_argument("partial_trace: matrix/partition mismatch");

  std::vector<bool> kept(n_parties, false);
  for (int k : keep) {
    if (k < 0 || k >= n_parties)
      throw std::out_of_range("partial_trace: keep index out of range");
    kept[k] = true;
  }

  // stride of party p in the flat index (leftmost party is slowest)
  std::vector<Eigen::Index> stride(n_parties, 1);
  for (int p = n_parties - 2; p >= 0; --p) stride[p] = stride[p + 1] * dims[p + 1];

  std::vector<int> keep_parties, env_parties;
  for (int p = 0; p < n_parties; ++p)
    (kept[p] ? keep_parties : env_parties).push_back(p);

  Eigen::Index dk = 1, de = 1;
  for (int p : keep_parties) dk *= dims[p];
  for (int p : env_parties) de *= dims[p];

  // flat index of a mixed-radix tuple over the given party list
  auto flat = [&](const std::vector<int>& parties, Eigen::Index tuple) {
    Eigen::Index idx = 0;
    for (int i = static_cast<int>(parties.size()) - 1; i >= 0; --i) {
      const int p = parties[i];
      idx += (tuple % dims[p]) * stride[p];
      tuple /= dims[p];
    }
    return idx;
  };

  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index e = 0; e < de; ++e) {
    const Eigen::Index fe = flat(env_parties, e);
    for (Eigen::Index r = 0; r < dk; ++r) {
      const Eigen::Index fr = flat(keep_parties, r) + fe;
      for (Eigen::Index c = 0; c < dk; ++c)
        out(r, c) += m(fr, flat(keep_parties, c) + fe);
    }
  }
  return out;
}

double trace_norm_svd(const Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("trace_norm: non-square input");
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double trace_norm(const Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("trace_norm: non-square input");
  if (!m.allFinite())
    throw std::invalid_argument("trace_norm: non-finite entries");
  if (m.size() == 0) return 0.0;
  const double scale = m.cwiseAbs().maxCoeff();
  const double tol = 1e-12 * std::max(1.0, scale);
  if (is_hermitian(m, tol))
    return hermitian_eigs(m).eigenvalues.cwiseAbs().sum();
  if (is_anti_hermitian(m, tol)) {
    // W anti-Hermitian => iW Hermitian, singular values = |eig(iW)|
    Matrix iw = Complex(0, 1) * m;
    return hermitian_eigs(iw).eigenvalues.cwiseAbs().sum();
  }
  return trace_norm_svd(m);
}

Spectrum hermitian_eigs(const Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("hermitian_eigs: non-square input");
  Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigs: eigensolver failed");
  const Eigen::Index n = m.rows();
  Spectrum s;
  s.eigenvalues.resize(n);
  s.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s.eigenvalues[i] = es.eigenvalues()[n - 1 - i];
    s.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return s;
}

}  // namespace qwit
