#include "qwit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qwit {

namespace {

constexpr double kPi = std::numbers::pi;

// 2x2 basis unitary for a Bloch direction; columns are the +/- projector
// vectors.
Eigen::Matrix2cd bloch_unitary(double theta, double phi) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  Eigen::Matrix2cd u;
  u << c, -std::conj(e) * s, e * s, c;
  return u;
}

// ||rho - Phi(rho)||_1 for the product basis given by per-party angles.
// Phi zeroes the off-diagonal part of rho in that basis.
double disturbance(const Matrix& rho, const std::vector<double>& angles) {
  const int np = static_cast<int>(angles.size() / 2);
  // party 0 is the leftmost (slowest) tensor factor
  Matrix u = Matrix::Identity(1, 1);
  for (int p = 0; p < np; ++p)
    u = kron(u, Matrix(bloch_unitary(angles[2 * p], angles[2 * p + 1])));
  Matrix in_basis = u.adjoint() * rho * u;
  in_basis.diagonal().setZero();
  Eigen::SelfAdjointEigenSolver<Matrix> es(in_basis, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

std::vector<double> marginal_basis_seed(const DensityMatrix& rho) {
  std::vector<double> angles;
  for (int p = 0; p < rho.partition.n_parties(); ++p) {
    const Matrix marg = partial_trace(rho.rho, rho.partition.dims, {p});
    const Spectrum s = hermitian_eigs(marg);
    const Vector v = s.eigenvectors.col(0);
    const double theta = 2.0 * std::atan2(std::abs(v[1]), std::abs(v[0]));
    double phi = std::arg(v[1]) - std::arg(v[0]);
    phi = std::fmod(phi + 4.0 * kPi, 2.0 * kPi);
    angles.push_back(theta);
    angles.push_back(phi);
  }
  return angles;
}

std::vector<double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, int max_iter, double* out_val) {
  const int n = static_cast<int>(x0.size());
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (int i = 0; i < n; ++i) simplex[i + 1][i] += 0.2;
  for (int i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

  auto order = [&] {
    std::vector<int> idx(n + 1);
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> s2(n + 1);
    std::vector<double> f2(n + 1);
    for (int i = 0; i <= n; ++i) {
      s2[i] = simplex[idx[i]];
      f2[i] = fv[idx[i]];
    }
    simplex.swap(s2);
    fv.swap(f2);
  };

  for (int it = 0; it < max_iter; ++it) {
    order();
    if (fv[n] - fv[0] < 1e-14) break;
    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) centroid[j] += simplex[i][j] / n;

    auto combine = [&](double coef) {
      std::vector<double> x(n);
      for (int j = 0; j < n; ++j)
        x[j] = centroid[j] + coef * (centroid[j] - simplex[n][j]);
      return x;
    };

    std::vector<double> xr = combine(1.0);
    const double fr = f(xr);
    if (fr < fv[0]) {
      std::vector<double> xe = combine(2.0);
      const double fe = f(xe);
      if (fe < fr) {
        simplex[n] = xe;
        fv[n] = fe;
      } else {
        simplex[n] = xr;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      simplex[n] = xr;
      fv[n] = fr;
    } else {
      std::vector<double> xc = combine(fr < fv[n] ? 0.5 : -0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, fv[n])) {
        simplex[n] = xc;
        fv[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          for (int j = 0; j < n; ++j)
            simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
          fv[i] = f(simplex[i]);
        }
      }
    }
  }
  order();
  if (out_val) *out_val = fv[0];
  return simplex[0];
}

MeasurementAngles canonicalize(const std::vector<double>& flat) {
  MeasurementAngles m;
  for (size_t p = 0; 2 * p + 1 < flat.size(); ++p) {
    double theta = flat[2 * p], phi = flat[2 * p + 1];
    theta = std::fmod(theta, 2.0 * kPi);
    if (theta < 0.0) theta += 2.0 * kPi;
    if (theta > kPi) {  // flip direction, swap projector roles
      theta = 2.0 * kPi - theta;
      phi += kPi;
    }
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi < 0.0) phi += 2.0 * kPi;
    // azimuth gauge freedom at the poles
    if (theta < 1e-12 || kPi - theta < 1e-12) phi = 0.0;
    m.angles.push_back({theta, phi});
  }
  return m;
}

}  // namespace

OracleResult classicality_distance(const DensityMatrix& rho,
                                   const OracleConfig& cfg) {
  for (int d : rho.partition.dims)
    if (d != 2)
      throw std::invalid_argument("classicality_distance: qubit parties only");
  if (rho.partition.total_dim() > 256)
    throw std::invalid_argument("classicality_distance: dimension cap exceeded");

  const int np = rho.partition.n_parties();
  const int na = 2 * np;
  auto f = [&rho](const std::vector<double>& a) {
    return disturbance(rho.rho, a);
  };

  OracleResult res;
  res.distance = std::numeric_limits<double>::infinity();
  res.grid_lower_bound = std::numeric_limits<double>::infinity();

  std::vector<std::vector<double>> starts;
  starts.push_back(marginal_basis_seed(rho));

  // Cheap pre-check: the marginal eigenbasis is already the minimizer for
  // any undisturbed state, so a hit here skips the grid stage entirely.
  {
    const double seed_val = f(starts.front());
    if (seed_val <= cfg.tol) {
      res.distance = seed_val;
      res.grid_lower_bound = seed_val;
      res.argmin = canonicalize(starts.front());
      return res;
    }
  }

  // Coarse stage: exhaustive grid for up to two parties, random sample above.
  std::vector<double> best_grid;
  const int g = cfg.coarse_grid;
  if (np <= 2) {
    res.grid_was_exhaustive = true;
    std::vector<int> idx(na, 0);
    std::vector<double> a(na);
    while (true) {
      for (int i = 0; i < na; ++i)
        a[i] = (i % 2 == 0) ? kPi * (idx[i] + 0.5) / g : 2.0 * kPi * idx[i] / g;
      const double v = f(a);
      if (v < res.grid_lower_bound) {
        res.grid_lower_bound = v;
        best_grid = a;
      }
      int c = na - 1;
      while (c >= 0 && ++idx[c] == g) idx[c--] = 0;
      if (c < 0) break;
    }
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int samples = g * g * np * 4;
    std::vector<double> a(na);
    for (int s = 0; s < samples; ++s) {
      for (int i = 0; i < na; ++i)
        a[i] = (i % 2 == 0) ? std::acos(1.0 - 2.0 * u01(rng))
                            : 2.0 * kPi * u01(rng);
      const double v = f(a);
      if (v < res.grid_lower_bound) {
        res.grid_lower_bound = v;
        best_grid = a;
      }
    }
  }
  if (!best_grid.empty()) starts.push_back(best_grid);

  std::mt19937_64 rng(cfg.seed ^ 0xabcdef1234ULL);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> a(na);
    for (int i = 0; i < na; ++i)
      a[i] = (i % 2 == 0) ? std::acos(1.0 - 2.0 * u01(rng)) : 2.0 * kPi * u01(rng);
    starts.push_back(a);
  }

  std::vector<double> best_angles = starts.front();
  for (const auto& s : starts) {
    const double direct = f(s);
    if (direct < res.distance) {
      res.distance = direct;
      best_angles = s;
    }
    if (res.distance <= cfg.tol) break;
    double val = 0.0;
    std::vector<double> x =
        nelder_mead(f, s, cfg.refine_iterations * na, &val);
    if (val < res.distance) {
      res.distance = val;
      best_angles = x;
    }
    if (res.distance <= cfg.tol) break;
  }
  res.argmin = canonicalize(best_angles);
  return res;
}

SufficiencyReport certify_witness_sufficiency(const DensityMatrix& rho,
                                              const OracleConfig& cfg) {
  SufficiencyReport rep;
  rep.witness = witness_norm(rho);
  rep.distance = classicality_distance(rho, cfg).distance;
  rep.implication_holds =
      rep.witness <= 10.0 * cfg.tol || rep.distance > cfg.tol;
  return rep;
}

}  // namespace qwit
