#include "qwit/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace qwit {

PauliStringOperator::PauliStringOperator(int n_spins,
                                         std::vector<PauliString> terms)
    : n_spins_(n_spins), terms_(std::move(terms)) {
  if (n_spins < 1 || n_spins > 30)
    throw std::invalid_argument("PauliStringOperator: bad spin count");
  compiled_.reserve(terms_.size());
  for (const PauliString& t : terms_) {
    if (static_cast<int>(t.labels.size()) != n_spins_)
      throw std::invalid_argument("PauliStringOperator: label length mismatch");
    CompiledTerm ct;
    int y_count = 0;
    for (int s = 0; s < n_spins_; ++s) {
      const uint64_t bit = uint64_t(1) << (n_spins_ - 1 - s);
      switch (t.labels[s]) {
        case Pauli::I:
          break;
        case Pauli::X:
          ct.x_mask |= bit;
          break;
        case Pauli::Y:
          ct.x_mask |= bit;
          ct.sign_mask |= bit;
          ++y_count;
          break;
        case Pauli::Z:
          ct.sign_mask |= bit;
          break;
      }
    }
    static const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    ct.amplitude = t.coefficient * i_pow[y_count & 3];
    compiled_.push_back(ct);
  }
}

void PauliStringOperator::apply(const Vector& v, Vector& out) const {
  if (v.size() != dim())
    throw std::invalid_argument("PauliStringOperator: vector length mismatch");
  out.setZero(dim());
  const uint64_t n = static_cast<uint64_t>(dim());
  for (const CompiledTerm& t : compiled_) {
    const Complex amp = t.amplitude;
    if (t.x_mask == 0 && t.sign_mask == 0) {
      out += amp * v;
      continue;
    }
    for (uint64_t b = 0; b < n; ++b) {
      const int par = std::popcount(b & t.sign_mask) & 1;
      const Complex a = par ? -amp : amp;
      out[b ^ t.x_mask] += a * v[b];
    }
  }
}

Vector PauliStringOperator::matvec(const Vector& v) const {
  Vector out;
  apply(v, out);
  return out;
}

Matrix PauliStringOperator::to_dense() const {
  if (n_spins_ > 12)
    throw std::invalid_argument("to_dense: chain too large");
  const Eigen::Index d = dim();
  Matrix m = Matrix::Zero(d, d);
  Vector e = Vector::Zero(d), col(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    e[j] = 1.0;
    apply(e, col);
    m.col(j) = col;
    e[j] = 0.0;
  }
  return m;
}

double PauliStringOperator::norm_bound() const {
  double s = 0.0;
  for (const PauliString& t : terms_) s += std::abs(t.coefficient);
  return s;
}

namespace {

PauliString string_on(int n, double coeff,
                      std::initializer_list<std::pair<int, Pauli>> sites) {
  PauliString t;
  t.coefficient = coeff;
  t.labels.assign(n, Pauli::I);
  for (auto [s, p] : sites) t.labels[s] = p;
  return t;
}

}  // namespace

PauliStringOperator build_xy(const XYParams& p) {
  if (p.n_spins < 2) throw std::invalid_argument("build_xy: n_spins < 2");
  const int n = p.n_spins;
  std::vector<PauliString> terms;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    terms.push_back(string_on(n, -p.lambda * (1.0 + p.gamma) / 2.0,
                              {{i, Pauli::X}, {j, Pauli::X}}));
    terms.push_back(string_on(n, -p.lambda * (1.0 - p.gamma) / 2.0,
                              {{i, Pauli::Y}, {j, Pauli::Y}}));
    terms.push_back(string_on(n, -1.0, {{i, Pauli::Z}}));
  }
  if (p.pinning_eps > 0.0)
    for (int i = 0; i < n; ++i)
      terms.push_back(string_on(n, -p.pinning_eps, {{i, Pauli::X}}));
  return PauliStringOperator(n, std::move(terms));
}

PauliStringOperator build_ashkin_teller(const ATParams& p) {
  if (p.n_sites < 2)
    throw std::invalid_argument("build_ashkin_teller: n_sites < 2");
  const int m = p.n_sites;
  const int n = p.n_spins();
  const double j = p.coupling;
  std::vector<PauliString> terms;
  for (int s = 0; s < m; ++s) {
    const int sig = 2 * s, tau = 2 * s + 1;
    const int sig1 = 2 * ((s + 1) % m), tau1 = 2 * ((s + 1) % m) + 1;
    terms.push_back(string_on(n, -j, {{sig, Pauli::X}}));
    terms.push_back(string_on(n, -j, {{tau, Pauli::X}}));
    terms.push_back(
        string_on(n, -j * p.delta, {{sig, Pauli::X}, {tau, Pauli::X}}));
    terms.push_back(
        string_on(n, -j * p.beta, {{sig, Pauli::Z}, {sig1, Pauli::Z}}));
    terms.push_back(
        string_on(n, -j * p.beta, {{tau, Pauli::Z}, {tau1, Pauli::Z}}));
    terms.push_back(string_on(n, -j * p.beta * p.delta,
                              {{sig, Pauli::Z},
                               {sig1, Pauli::Z},
                               {tau, Pauli::Z},
                               {tau1, Pauli::Z}}));
  }
  return PauliStringOperator(n, std::move(terms));
}

PauliStringOperator xy_parity(int n_spins) {
  PauliString t;
  t.coefficient = 1.0;
  t.labels.assign(n_spins, Pauli::Z);
  return PauliStringOperator(n_spins, {t});
}

std::pair<PauliStringOperator, PauliStringOperator> at_parity_operators(
    const ATParams& p) {
  const int n = p.n_spins();
  PauliString p1, p2;
  p1.coefficient = p2.coefficient = 1.0;
  p1.labels.assign(n, Pauli::I);
  p2.labels.assign(n, Pauli::I);
  for (int s = 0; s < p.n_sites; ++s) {
    p1.labels[2 * s] = Pauli::X;
    p2.labels[2 * s + 1] = Pauli::X;
  }
  return {PauliStringOperator(n, {p1}), PauliStringOperator(n, {p2})};
}

}  // namespace qwit
