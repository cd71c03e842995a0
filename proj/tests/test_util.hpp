#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "qwit/states.hpp"

namespace testutil {

using qwit::Complex;
using qwit::Matrix;
using qwit::Vector;

inline Matrix pauli_i() { return Matrix::Identity(2, 2); }

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, int n) {
  Matrix m = random_matrix(rng, n, n);
  return Matrix((m + m.adjoint()) / 2.0);
}

inline Matrix random_density(std::mt19937_64& rng, int n) {
  Matrix g = random_matrix(rng, n, n);
  Matrix r = g * g.adjoint();
  r /= r.trace();
  return r;
}

inline Matrix random_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n, n));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

inline qwit::MeasurementAngles random_angles(std::mt19937_64& rng,
                                             int n_parties) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  qwit::MeasurementAngles m;
  for (int p = 0; p < n_parties; ++p)
    m.angles.push_back({std::acos(1.0 - 2.0 * u01(rng)),
                        2.0 * std::numbers::pi * u01(rng)});
  return m;
}

inline std::vector<double> random_probs(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<double> p(n);
  double s = 0.0;
  for (double& x : p) s += (x = u01(rng) + 1e-4);
  for (double& x : p) x /= s;
  double acc = 0.0;
  for (int i = 0; i + 1 < n; ++i) acc += p[i];
  p[n - 1] = 1.0 - acc;
  return p;
}

inline Matrix bell_state() {
  Vector v = Vector::Zero(4);
  v[0] = v[3] = 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

}  // namespace testutil
