#include "qwit/states.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qwit {

Eigen::Index Partition::total_dim() const {
  Eigen::Index d = 1;
  for (int x : dims) d *= x;
  return d;
}

void Partition::validate() const {
  if (dims.empty()) throw std::invalid_argument("Partition: empty");
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("Partition: party dimension < 2");
}

Partition Partition::qubits(int n) {
  Partition p;
  p.dims.assign(n, 2);
  return p;
}

DensityMatrix DensityMatrix::checked(Matrix m, Partition p) {
  p.validate();
  if (m.rows() != p.total_dim() || m.cols() != p.total_dim())
    throw std::invalid_argument("DensityMatrix: matrix/partition mismatch");
  if (!is_hermitian(m, 1e-12))
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > 1e-12 ||
      std::abs(m.trace().imag()) > 1e-12)
    throw std::invalid_argument("DensityMatrix: trace != 1");
  const Spectrum s = hermitian_eigs(m);
  if (s.eigenvalues.minCoeff() < -1e-10)
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  return DensityMatrix{std::move(m), std::move(p)};
}

DensityMatrix DensityMatrix::unchecked(Matrix m, Partition p) {
  return DensityMatrix{std::move(m), std::move(p)};
}

Matrix LocalMeasurement::joint_unitary() const {
  Matrix u = Matrix::Identity(1, 1);
  for (const auto& vecs : party_vectors) {
    const Eigen::Index d = vecs.size();
    Matrix up(d, d);
    for (Eigen::Index i = 0; i < d; ++i) up.col(i) = vecs[i];
    u = kron(u, up);
  }
  return u;
}

Eigen::Index LocalMeasurement::n_outcomes() const {
  Eigen::Index n = 1;
  for (const auto& vecs : party_vectors) n *= vecs.size();
  return n;
}

Matrix LocalMeasurement::joint_projector(Eigen::Index outcome) const {
  // outcome is mixed-radix over parties, leftmost party slowest
  const int np = n_parties();
  std::vector<Eigen::Index> idx(np);
  for (int p = np - 1; p >= 0; --p) {
    const Eigen::Index d = party_vectors[p].size();
    idx[p] = outcome % d;
    outcome /= d;
  }
  Matrix pi = Matrix::Identity(1, 1);
  for (int p = 0; p < np; ++p) {
    const Vector& v = party_vectors[p][idx[p]];
    pi = kron(pi, v * v.adjoint());
  }
  return pi;
}

bool LocalMeasurement::matches(const Partition& p) const {
  if (n_parties() != p.n_parties()) return false;
  for (int i = 0; i < p.n_parties(); ++i) {
    if (static_cast<int>(party_vectors[i].size()) != p.dims[i]) return false;
    for (const Vector& v : party_vectors[i])
      if (v.size() != p.dims[i]) return false;
  }
  return true;
}

void LocalMeasurement::validate() const {
  for (const auto& vecs : party_vectors) {
    if (vecs.empty()) throw std::invalid_argument("LocalMeasurement: empty party");
    const Eigen::Index d = vecs[0].size();
    if (static_cast<Eigen::Index>(vecs.size()) != d)
      throw std::invalid_argument("LocalMeasurement: incomplete projector set");
    for (size_t i = 0; i < vecs.size(); ++i) {
      for (size_t j = 0; j < vecs.size(); ++j) {
        const Complex dot = vecs[i].adjoint() * vecs[j];
        const double want = (i == j) ? 1.0 : 0.0;
        if (std::abs(dot - want) > 1e-12)
          throw std::invalid_argument("LocalMeasurement: not orthonormal");
      }
    }
  }
}

LocalMeasurement MeasurementAngles::to_measurement() const {
  LocalMeasurement m;
  for (const BlochAngles& a : angles) {
    const double c = std::cos(a.theta / 2.0), s = std::sin(a.theta / 2.0);
    const Complex e = std::polar(1.0, a.phi);
    Vector plus(2), minus(2);
    plus << c, e * s;      // +n direction
    minus << -std::conj(e) * s, c;  // orthogonal complement
    m.party_vectors.push_back({plus, minus});
  }
  return m;
}

LocalMeasurement computational_basis(const Partition& p) {
  LocalMeasurement m;
  for (int d : p.dims) {
    std::vector<Vector> vecs;
    for (int i = 0; i < d; ++i) {
      Vector v = Vector::Zero(d);
      v[i] = 1.0;
      vecs.push_back(v);
    }
    m.party_vectors.push_back(std::move(vecs));
  }
  return m;
}

DensityMatrix apply_measurement(const DensityMatrix& rho,
                                const LocalMeasurement& m) {
  if (!m.matches(rho.partition))
    throw std::invalid_argument("apply_measurement: partition mismatch");
  // Every joint projector is rank-1, so Phi zeroes all off-diagonal entries
  // in the joint measurement basis.
  const Matrix u = m.joint_unitary();
  Matrix in_basis = u.adjoint() * rho.rho * u;
  Matrix diag = in_basis.diagonal().asDiagonal();
  return DensityMatrix::unchecked(u * diag * u.adjoint(), rho.partition);
}

DensityMatrix make_classical_state(const Partition& p,
                                   const LocalMeasurement& m,
                                   const std::vector<double>& probs) {
  if (!m.matches(p))
    throw std::invalid_argument("make_classical_state: partition mismatch");
  if (static_cast<Eigen::Index>(probs.size()) != m.n_outcomes())
    throw std::invalid_argument("make_classical_state: wrong prob count");
  double sum = 0.0;
  for (double q : probs) {
    if (q < 0.0) throw std::invalid_argument("make_classical_state: negative prob");
    sum += q;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("make_classical_state: probs do not sum to 1");
  const Matrix u = m.joint_unitary();
  Vector d(probs.size());
  for (size_t i = 0; i < probs.size(); ++i) d[i] = probs[i];
  Matrix diag = d.asDiagonal();
  return DensityMatrix::unchecked(u * diag * u.adjoint(), p);
}

bool is_classical_under(const DensityMatrix& rho, const LocalMeasurement& m,
                        double tol) {
  const DensityMatrix phi = apply_measurement(rho, m);
  return trace_norm(phi.rho - rho.rho) <= tol;
}

double max_projector_commutator_norm(const DensityMatrix& rho,
                                     const LocalMeasurement& m) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.n_outcomes(); ++j) {
    const Matrix pi = m.joint_projector(j);
    worst = std::max(worst, trace_norm(commutator(rho.rho, pi)));
  }
  return worst;
}

Matrix marginal_product(const DensityMatrix& rho) {
  Matrix prod = Matrix::Identity(1, 1);
  for (int p = 0; p < rho.partition.n_parties(); ++p)
    prod = kron(prod, partial_trace(rho.rho, rho.partition.dims, {p}));
  return prod;
}

Theorem2Report check_theorem2(const DensityMatrix& rho,
                              const LocalMeasurement& m) {
  Theorem2Report rep;
  const DensityMatrix phi = apply_measurement(rho, m);
  rep.phi_distance = trace_norm(phi.rho - rho.rho);
  rep.marginal_commutator_norm =
      trace_norm(commutator(rho.rho, marginal_product(rho)));
  rep.implication_holds =
      rep.phi_distance > 1e-10 || rep.marginal_commutator_norm <= 1e-10;
  return rep;
}

}  // namespace qwit
