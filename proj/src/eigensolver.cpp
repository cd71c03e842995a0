#include "qwit/eigensolver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qwit {

namespace {

Vector random_vector(Eigen::Index dim, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  return v;
}

using Projector = std::function<void(Vector&)>;

Projector make_sector_projector(const std::vector<PauliStringOperator>& parities,
                                const std::vector<int>& signs) {
  if (parities.size() != signs.size())
    throw std::invalid_argument("sector projector: parity/sign count mismatch");
  return [&parities, signs](Vector& v) {
    Vector tmp;
    for (size_t i = 0; i < parities.size(); ++i) {
      parities[i].apply(v, tmp);
      v = 0.5 * (v + double(signs[i]) * tmp);
    }
  };
}

void orthogonalize_against(Vector& v, const std::vector<Vector>& basis) {
  for (const Vector& b : basis) v -= (b.dot(v)) * b;
}

struct SinglePairResult {
  double energy = 0.0;
  Vector vector;
  double residual = 0.0;
};

// Restarted Lanczos with full reorthogonalization for the lowest eigenpair
// of the (optionally projected, optionally deflated) operator.
SinglePairResult lanczos_lowest(const PauliStringOperator& op,
                                const Projector& project,
                                const std::vector<Vector>& deflate,
                                uint64_t seed, const SolverOptions& opts) {
  const Eigen::Index dim = op.dim();
  const double scale = std::max(1.0, op.norm_bound());
  const double target = opts.tol * scale;

  Vector v0 = random_vector(dim, seed);
  if (project) project(v0);
  orthogonalize_against(v0, deflate);
  if (v0.norm() < 1e-10) {
    // retry a few seeds before declaring the sector empty
    bool ok = false;
    for (int t = 1; t <= 4 && !ok; ++t) {
      v0 = random_vector(dim, seed + 0x9e3779b97f4a7c15ULL * t);
      if (project) project(v0);
      orthogonalize_against(v0, deflate);
      ok = v0.norm() >= 1e-10;
    }
    if (!ok) throw std::runtime_error("lanczos: empty sector");
  }
  v0.normalize();

  double best_energy = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  Vector best = v0;
  int total_iters = 0;

  while (total_iters < opts.max_iter) {
    const int m = std::min<int>(opts.krylov_dim, static_cast<int>(dim));
    Matrix basis(dim, m);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);

    basis.col(0) = v0;
    Vector w(dim);
    int built = 0;
    for (int j = 0; j < m; ++j) {
      op.apply(basis.col(j), w);
      if (project) project(w);
      orthogonalize_against(w, deflate);
      alpha[j] = std::real(basis.col(j).dot(w));
      // full reorthogonalization, twice
      for (int pass = 0; pass < 2; ++pass) {
        Eigen::VectorXcd c = basis.leftCols(j + 1).adjoint() * w;
        w -= basis.leftCols(j + 1) * c;
      }
      built = j + 1;
      ++total_iters;
      const double nb = w.norm();
      if (j + 1 < m) {
        if (nb < 1e-13 * scale) break;  // invariant subspace
        beta[j] = nb;
        basis.col(j + 1) = w / nb;
      } else {
        beta[j] = nb;
      }
    }

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(built, built);
    for (int j = 0; j < built; ++j) {
      tri(j, j) = alpha[j];
      if (j + 1 < built) tri(j, j + 1) = tri(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    const Eigen::VectorXd ritz = es.eigenvalues();
    Vector x = basis.leftCols(built) * es.eigenvectors().col(0).cast<Complex>();
    if (project) project(x);
    orthogonalize_against(x, deflate);
    x.normalize();

    op.apply(x, w);
    if (project) project(w);
    orthogonalize_against(w, deflate);
    const double energy = std::real(x.dot(w));
    residual = (w - energy * x).norm();
    if (energy <= best_energy + 1e-14 * scale) {
      best_energy = std::min(best_energy, energy);
      best = x;
    }
    if (residual <= target) {
      SinglePairResult r;
      r.energy = energy;
      r.vector = x;
      r.residual = residual;
      return r;
    }
    v0 = x;  // restart from the Ritz vector
  }
  throw ConvergenceError("lanczos: no convergence after max iterations",
                         residual);
}

SinglePairResult power_lowest(const PauliStringOperator& op,
                              const Projector& project,
                              const std::vector<Vector>& deflate, uint64_t seed,
                              const SolverOptions& opts) {
  const Eigen::Index dim = op.dim();
  const double shift = op.norm_bound();  // cI - H is positive semidefinite
  const double target = opts.tol * std::max(1.0, op.norm_bound());

  Vector x = random_vector(dim, seed);
  if (project) project(x);
  orthogonalize_against(x, deflate);
  if (x.norm() < 1e-10) throw std::runtime_error("power method: empty sector");
  x.normalize();

  Vector hx(dim);
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_iter; ++it) {
    op.apply(x, hx);
    if (project) project(hx);
    orthogonalize_against(hx, deflate);
    const double energy = std::real(x.dot(hx));
    residual = (hx - energy * x).norm();
    if (residual <= target) {
      SinglePairResult r;
      r.energy = energy;
      r.vector = x;
      r.residual = residual;
      return r;
    }
    x = shift * x - hx;
    if (project) project(x);
    orthogonalize_against(x, deflate);
    const double nx = x.norm();
    if (nx < 1e-14) throw std::runtime_error("power method: vector collapsed");
    x /= nx;
  }
  throw ConvergenceError("power method: no convergence after max iterations",
                         residual);
}

SinglePairResult solve_lowest(const PauliStringOperator& op,
                              const Projector& project,
                              const std::vector<Vector>& deflate, uint64_t seed,
                              const SolverOptions& opts) {
  return opts.method == SolveMethod::lanczos
             ? lanczos_lowest(op, project, deflate, seed, opts)
             : power_lowest(op, project, deflate, seed, opts);
}

}  // namespace

GroundStateResult lowest_states(const PauliStringOperator& op, int k,
                                uint64_t seed, SolverOptions opts) {
  if (k < 1) throw std::invalid_argument("lowest_states: k < 1");
  if (op.dim() < k) throw std::invalid_argument("lowest_states: k exceeds dim");
  GroundStateResult res;
  std::vector<Vector> deflate;
  for (int i = 0; i < k; ++i) {
    SinglePairResult p =
        solve_lowest(op, nullptr, deflate, seed + 1000003ULL * i, opts);
    res.energies.push_back(p.energy);
    res.vectors.push_back(p.vector);
    res.residuals.push_back(p.residual);
    res.sector_labels.emplace_back();
    deflate.push_back(p.vector);
  }
  return res;
}

GroundStateResult lowest_in_sector(const PauliStringOperator& op,
                                   const std::vector<PauliStringOperator>& parities,
                                   const std::vector<int>& signs, uint64_t seed,
                                   SolverOptions opts) {
  Projector project = make_sector_projector(parities, signs);
  SinglePairResult p = solve_lowest(op, project, {}, seed, opts);
  // parity eigenvector check
  Vector tmp;
  for (size_t i = 0; i < parities.size(); ++i) {
    parities[i].apply(p.vector, tmp);
    if ((tmp - double(signs[i]) * p.vector).norm() > 1e-9)
      throw std::runtime_error("lowest_in_sector: parity constraint violated");
  }
  GroundStateResult res;
  res.energies.push_back(p.energy);
  res.vectors.push_back(p.vector);
  res.residuals.push_back(p.residual);
  res.sector_labels.push_back(signs);
  return res;
}

Matrix ChainEnsemble::reduced_density(const std::vector<int>& sites) const {
  std::vector<int> s = sites;
  std::sort(s.begin(), s.end());
  if (!s.empty() && (s.front() < 0 || s.back() >= n_spins))
    throw std::out_of_range("reduced_density: site out of range");
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("reduced_density: duplicate site");

  const int L = static_cast<int>(s.size());
  const int E = n_spins - L;
  const Eigen::Index dk = Eigen::Index(1) << L;
  const Eigen::Index de = Eigen::Index(1) << E;

  std::vector<uint64_t> block_bit(L), env_bit(E);
  {
    std::vector<bool> in_block(n_spins, false);
    for (int i = 0; i < L; ++i) {
      in_block[s[i]] = true;
      block_bit[i] = uint64_t(1) << (n_spins - 1 - s[i]);
    }
    int e = 0;
    for (int site = 0; site < n_spins; ++site)
      if (!in_block[site]) env_bit[e++] = uint64_t(1) << (n_spins - 1 - site);
  }
  auto scatter = [](uint64_t tuple, const std::vector<uint64_t>& bits) {
    uint64_t out = 0;
    const int nb = static_cast<int>(bits.size());
    for (int i = 0; i < nb; ++i)
      if (tuple & (uint64_t(1) << (nb - 1 - i))) out |= bits[i];
    return out;
  };

  std::vector<uint64_t> block_idx(dk), env_idx(de);
  for (Eigen::Index r = 0; r < dk; ++r) block_idx[r] = scatter(r, block_bit);
  for (Eigen::Index e = 0; e < de; ++e) env_idx[e] = scatter(e, env_bit);

  Matrix rho = Matrix::Zero(dk, dk);
  for (size_t v = 0; v < vectors.size(); ++v) {
    const Vector& psi = vectors[v];
    const double w = weights[v];
    Vector amp(dk);
    for (Eigen::Index e = 0; e < de; ++e) {
      for (Eigen::Index r = 0; r < dk; ++r)
        amp[r] = psi[block_idx[r] | env_idx[e]];
      rho.noalias() += w * (amp * amp.adjoint());
    }
  }
  return rho;
}

DensityMatrix ChainEnsemble::reduced_state(const std::vector<int>& sites) const {
  return DensityMatrix::checked(reduced_density(sites),
                                Partition::qubits(static_cast<int>(sites.size())));
}

double ChainEnsemble::expectation(const PauliStringOperator& op) const {
  double val = 0.0;
  Vector tmp;
  for (size_t v = 0; v < vectors.size(); ++v) {
    op.apply(vectors[v], tmp);
    val += weights[v] * std::real(vectors[v].dot(tmp));
  }
  return val;
}

DensityMatrix ChainEnsemble::to_density_matrix() const {
  if (n_spins > 10)
    throw std::invalid_argument("to_density_matrix: chain too large");
  const Eigen::Index d = Eigen::Index(1) << n_spins;
  Matrix rho = Matrix::Zero(d, d);
  for (size_t v = 0; v < vectors.size(); ++v)
    rho += weights[v] * (vectors[v] * vectors[v].adjoint());
  return DensityMatrix::checked(rho, Partition::qubits(n_spins));
}

ChainEnsemble symmetric_ground_state(const PauliStringOperator& op,
                                     const std::vector<PauliStringOperator>& parities,
                                     uint64_t seed, GroundStateConfig cfg) {
  ChainEnsemble ens;
  ens.n_spins = op.n_spins();

  if (parities.empty()) {
    GroundStateResult r = lowest_states(op, 1, seed, cfg.solver);
    ens.weights = {1.0};
    ens.vectors = {r.vectors[0]};
    ens.energy = r.energies[0];
    ens.residual = r.residuals[0];
    return ens;
  }

  const int np = static_cast<int>(parities.size());
  struct SectorState {
    double energy;
    Vector vector;
    double residual;
  };
  std::vector<SectorState> sectors;
  for (int combo = 0; combo < (1 << np); ++combo) {
    std::vector<int> signs(np);
    for (int i = 0; i < np; ++i) signs[i] = (combo >> i) & 1 ? -1 : 1;
    GroundStateResult r =
        lowest_in_sector(op, parities, signs, seed + 7919ULL * combo, cfg.solver);
    sectors.push_back({r.energies[0], r.vectors[0], r.residuals[0]});
  }
  std::sort(sectors.begin(), sectors.end(),
            [](const SectorState& a, const SectorState& b) {
              return a.energy < b.energy;
            });
  const double e0 = sectors[0].energy;
  const double window = cfg.degeneracy_tol * std::max(1.0, std::abs(e0));

  std::vector<const SectorState*> kept;
  for (const SectorState& s : sectors)
    if (s.energy - e0 <= window) kept.push_back(&s);

  ens.energy = e0;
  ens.sector_gap =
      sectors.size() > 1 ? sectors[1].energy - e0 : 0.0;
  for (const SectorState* s : kept) {
    ens.weights.push_back(1.0 / kept.size());
    ens.vectors.push_back(s->vector);
    ens.residual = std::max(ens.residual, s->residual);
  }
  return ens;
}

ChainEnsemble broken_ground_state(const PauliStringOperator& op,
                                  const PauliStringOperator& parity, int sign,
                                  uint64_t seed, GroundStateConfig cfg) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("broken_ground_state: sign must be +/-1");
  std::vector<PauliStringOperator> ps = {parity};
  GroundStateResult even = lowest_in_sector(op, ps, {1}, seed, cfg.solver);
  GroundStateResult odd = lowest_in_sector(op, ps, {-1}, seed + 1, cfg.solver);

  const double e0 = std::min(even.energies[0], odd.energies[0]);
  const double gap = std::abs(even.energies[0] - odd.energies[0]);
  if (gap >= cfg.degeneracy_tol * std::max(1.0, std::abs(e0)))
    throw std::runtime_error(
        "broken_ground_state: sector gap above degeneracy tolerance (no SSB)");

  const Vector& g0 = even.vectors[0];
  const Vector& g1 = odd.vectors[0];

  // total sigma_x magnetization operator
  const int n = op.n_spins();
  std::vector<PauliString> xterms;
  for (int i = 0; i < n; ++i) {
    PauliString t;
    t.coefficient = 1.0 / n;
    t.labels.assign(n, Pauli::I);
    t.labels[i] = Pauli::X;
    xterms.push_back(t);
  }
  PauliStringOperator mx(n, xterms);

  // <psi(chi)| m_x |psi(chi)> = Re(e^{i chi} c01): diagonal blocks vanish
  // by parity, so only the cross term survives.
  Vector tmp;
  mx.apply(g1, tmp);
  const Complex c01 = g0.dot(tmp);
  auto mag = [&](double chi) { return std::real(std::polar(1.0, chi) * c01); };

  // coarse scan then golden-section refinement
  double best_chi = 0.0, best_val = -std::numeric_limits<double>::infinity();
  constexpr int kScan = 64;
  for (int i = 0; i < kScan; ++i) {
    const double chi = 2.0 * std::numbers::pi * i / kScan;
    const double v = mag(chi);
    if (v > best_val) {
      best_val = v;
      best_chi = chi;
    }
  }
  if (std::abs(best_val) < 1e-8)
    throw std::runtime_error(
        "broken_ground_state: magnetization tie, SSB construction not applicable");
  {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_chi - 2.0 * std::numbers::pi / kScan;
    double hi = best_chi + 2.0 * std::numbers::pi / kScan;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = mag(x1), f2 = mag(x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = mag(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = mag(x1);
      }
    }
    best_chi = 0.5 * (lo + hi);
  }
  if (sign < 0) best_chi += std::numbers::pi;

  // When the two sectors are degenerate to solver accuracy, every
  // superposition is an exact ground state and the physical broken state is
  // the most classical member of the manifold (at the factorization
  // coupling that member is an exact product state). Fine-tune the
  // amplitude split within a window that preserves the magnetization to
  // one part in 10^3, minimizing the nearest-neighbour block witness.
  double alpha = std::numbers::pi / 4.0;
  if (gap <= 1e-8 * std::max(1.0, std::abs(e0))) {
    auto pair_witness = [&](double al) {
      Vector v = std::cos(al) * g0 + std::polar(1.0, best_chi) * std::sin(al) * g1;
      v.normalize();
      ChainEnsemble probe;
      probe.n_spins = n;
      probe.weights = {1.0};
      probe.vectors = {std::move(v)};
      const Matrix rho2 = probe.reduced_density({0, 1});
      Matrix marg = Matrix::Zero(4, 4);
      const Matrix m0 = partial_trace(rho2, {2, 2}, {0});
      const Matrix m1 = partial_trace(rho2, {2, 2}, {1});
      marg = kron(m0, m1);
      return trace_norm(rho2 * marg - marg * rho2);
    };
    // sin(2a) >= 1 - 1e-3 keeps the magnetization within the window
    const double half_width = 0.5 * std::acos(1.0 - 1e-3);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::numbers::pi / 4.0 - half_width;
    double hi = std::numbers::pi / 4.0 + half_width;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = pair_witness(x1), f2 = pair_witness(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = pair_witness(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = pair_witness(x2);
      }
    }
    const double refined = 0.5 * (lo + hi);
    if (pair_witness(refined) < pair_witness(alpha)) alpha = refined;
  }

  ChainEnsemble ens;
  ens.n_spins = n;
  ens.weights = {1.0};
  Vector psi = std::cos(alpha) * g0 + std::polar(1.0, best_chi) * std::sin(alpha) * g1;
  psi.normalize();
  ens.vectors = {psi};
  ens.energy = e0;
  ens.sector_gap = gap;
  ens.residual = std::max(even.residuals[0], odd.residuals[0]);
  return ens;
}

}  // namespace qwit
