#include "qwit/xy_fermion.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qwit {

namespace {

struct ModeData {
  double occupation;
  Complex pair;  // <c^dag_k c^dag_-k>
  double ground_energy;  // epsilon_k - E_k
};

// Ground state of the (k,-k) pair restricted to its even-parity block
// {|0>, c^dag_k c^dag_-k |0>}, which is a 2x2 eigenproblem.
ModeData solve_mode(double eps, double delta) {
  Matrix block(2, 2);
  block << 0.0, Complex(0.0, delta), Complex(0.0, -delta), 2.0 * eps;
  Eigen::SelfAdjointEigenSolver<Matrix> es(block);
  const Vector g = es.eigenvectors().col(0);
  ModeData m;
  m.occupation = std::norm(g[1]);
  m.pair = g[0] * std::conj(g[1]);
  m.ground_energy = es.eigenvalues()[0];
  return m;
}

FermionRing build_on_grid(double lambda, double gamma, int n_modes,
                          bool antiperiodic) {
  FermionRing ring;
  ring.n_modes = n_modes;
  ring.lambda = lambda;
  ring.gamma = gamma;
  ring.antiperiodic = antiperiodic;

  double energy = -double(n_modes);
  if (antiperiodic) {
    for (int j = 0; j < n_modes / 2; ++j) {
      const double k = std::numbers::pi * (2 * j + 1) / n_modes;
      const double eps = 2.0 - 2.0 * lambda * std::cos(k);
      const double delta = 2.0 * lambda * gamma * std::sin(k);
      const ModeData m = solve_mode(eps, delta);
      ring.momenta.push_back(k);
      ring.dispersion.push_back(std::hypot(eps, delta));
      ring.occupation.push_back(m.occupation);
      ring.pair_amplitude.push_back(m.pair);
      energy += m.ground_energy;
    }
  } else {
    for (int j = 1; j < n_modes / 2; ++j) {
      const double k = 2.0 * std::numbers::pi * j / n_modes;
      const double eps = 2.0 - 2.0 * lambda * std::cos(k);
      const double delta = 2.0 * lambda * gamma * std::sin(k);
      const ModeData m = solve_mode(eps, delta);
      ring.momenta.push_back(k);
      ring.dispersion.push_back(std::hypot(eps, delta));
      ring.occupation.push_back(m.occupation);
      ring.pair_amplitude.push_back(m.pair);
      energy += m.ground_energy;
    }
    const double eps0 = 2.0 - 2.0 * lambda;
    const double eps_pi = 2.0 + 2.0 * lambda;
    ring.unpaired_momenta = {0.0, std::numbers::pi};
    ring.unpaired_occupation = {eps0 < 0.0 ? 1.0 : 0.0, eps_pi < 0.0 ? 1.0 : 0.0};
    energy += std::min(eps0, 0.0) + std::min(eps_pi, 0.0);
  }
  ring.energy_density = energy / n_modes;
  return ring;
}

}  // namespace

FermionRing solve_ring(double lambda, double gamma, int n_modes) {
  if (lambda < 0.0 || gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("solve_ring: parameter out of range");
  if (n_modes < 4 || n_modes % 2 != 0)
    throw std::invalid_argument("solve_ring: n_modes must be even and >= 4");
  FermionRing anti = build_on_grid(lambda, gamma, n_modes, true);
  FermionRing per = build_on_grid(lambda, gamma, n_modes, false);
  return anti.energy_density <= per.energy_density ? anti : per;
}

double contraction_BA(const FermionRing& ring, int r) {
  Complex sum = 0.0;
  for (size_t i = 0; i < ring.momenta.size(); ++i) {
    const double k = ring.momenta[i];
    const double n = ring.occupation[i];
    const Complex p = ring.pair_amplitude[i];
    const Complex ep = std::polar(1.0, k * r);   // e^{ikr}
    const Complex em = std::conj(ep);
    // +k branch
    sum += ep * (n + p) - em * (1.0 - n - std::conj(p));
    // -k branch (pair amplitude flips sign)
    sum += em * (n - p) - ep * (1.0 - n + std::conj(p));
  }
  for (size_t i = 0; i < ring.unpaired_momenta.size(); ++i) {
    const double k = ring.unpaired_momenta[i];
    const double n = ring.unpaired_occupation[i];
    const Complex ep = std::polar(1.0, k * r);
    sum += ep * n - std::conj(ep) * (1.0 - n);
  }
  return sum.real() / ring.n_modes;
}

double contraction_AA(const FermionRing& ring, int r) {
  Complex sum = 0.0;
  for (size_t i = 0; i < ring.momenta.size(); ++i) {
    const double k = ring.momenta[i];
    const double n = ring.occupation[i];
    const Complex p = ring.pair_amplitude[i];
    const Complex ep = std::polar(1.0, k * r);
    const Complex em = std::conj(ep);
    sum += ep * n + em * (1.0 - n) + ep * p - em * std::conj(p);
    sum += em * n + ep * (1.0 - n) - em * p + ep * std::conj(p);
  }
  for (size_t i = 0; i < ring.unpaired_momenta.size(); ++i) {
    const double k = ring.unpaired_momenta[i];
    const double n = ring.unpaired_occupation[i];
    const Complex ep = std::polar(1.0, k * r);
    sum += ep * n + std::conj(ep) * (1.0 - n);
  }
  return sum.real() / ring.n_modes;
}

double contraction_BB(const FermionRing& ring, int r) {
  Complex sum = 0.0;
  for (size_t i = 0; i < ring.momenta.size(); ++i) {
    const double k = ring.momenta[i];
    const double n = ring.occupation[i];
    const Complex p = ring.pair_amplitude[i];
    const Complex ep = std::polar(1.0, k * r);
    const Complex em = std::conj(ep);
    sum += -ep * n - em * (1.0 - n) + ep * p - em * std::conj(p);
    sum += -em * n - ep * (1.0 - n) - em * p + ep * std::conj(p);
  }
  for (size_t i = 0; i < ring.unpaired_momenta.size(); ++i) {
    const double k = ring.unpaired_momenta[i];
    const double n = ring.unpaired_occupation[i];
    const Complex ep = std::polar(1.0, k * r);
    sum += -ep * n - std::conj(ep) * (1.0 - n);
  }
  return sum.real() / ring.n_modes;
}

CorrelatorSet symmetric_correlators(const FermionRing& ring) {
  CorrelatorSet c;
  c.G_z = -contraction_BA(ring, 0);
  c.G_xx = contraction_BA(ring, 1);
  c.G_yy = contraction_BA(ring, -1);
  // Wick: <z z> = <z>^2 - <A0 A1><B0 B1> - <B0 A-1-ish cross terms>
  c.G_zz = c.G_z * c.G_z - contraction_AA(ring, 1) * contraction_BB(ring, 1) -
           contraction_BA(ring, -1) * contraction_BA(ring, 1);
  c.G_x = 0.0;
  c.G_xz = 0.0;
  return c;
}

double factorization_point(double gamma) {
  if (gamma < 0.0)
    throw std::invalid_argument("factorization_point: gamma < 0");
  if (gamma >= 1.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(1.0 - gamma * gamma);
}

std::vector<std::pair<double, double>> symmetric_witness_curve(
    double gamma, const std::vector<double>& lambda_grid, int n_modes) {
  std::vector<std::pair<double, double>> curve;
  curve.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) {
    const FermionRing ring = solve_ring(lambda, gamma, n_modes);
    curve.emplace_back(lambda, xstate_witness_norm(symmetric_correlators(ring)));
  }
  return curve;
}

}  // namespace qwit
