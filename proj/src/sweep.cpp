#include "qwit/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qwit/oracle.hpp"
#include "qwit/xy_fermion.hpp"

namespace qwit {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Eigen::Matrix2cd pauli_matrix(Pauli p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

double pair_expectation(const Matrix& rho2, Pauli a, Pauli b) {
  const Matrix op = kron(Matrix(pauli_matrix(a)), Matrix(pauli_matrix(b)));
  return (rho2 * op).trace().real();
}

CorrelatorSet correlators_from_pair(const Matrix& rho2) {
  CorrelatorSet c;
  c.G_z = pair_expectation(rho2, Pauli::Z, Pauli::I);
  c.G_xx = pair_expectation(rho2, Pauli::X, Pauli::X);
  c.G_yy = pair_expectation(rho2, Pauli::Y, Pauli::Y);
  c.G_zz = pair_expectation(rho2, Pauli::Z, Pauli::Z);
  c.G_x = pair_expectation(rho2, Pauli::X, Pauli::I);
  c.G_xz = pair_expectation(rho2, Pauli::X, Pauli::Z);
  return c;
}

}  // namespace

void SweepSpec::validate() const {
  if (steps < 2) throw std::invalid_argument("sweep: steps < 2");
  if (model == SweepModel::ashkin_teller) {
    if (swept != "beta" && swept != "delta")
      throw std::invalid_argument("sweep: ashkin_teller sweeps beta or delta");
    if (n_spins % 2 != 0)
      throw std::invalid_argument("sweep: ashkin_teller needs an even spin count");
  } else {
    if (swept != "lambda")
      throw std::invalid_argument("sweep: xy models sweep lambda");
    if (block == BlockKind::quartet || block == BlockKind::octet)
      throw std::invalid_argument("sweep: quartet/octet blocks are ashkin_teller only");
  }
  for (int s : block_sites())
    if (s < 0 || (model != SweepModel::xy_symmetric && s >= n_spins))
      throw std::invalid_argument("sweep: block site outside chain");
}

std::vector<int> SweepSpec::block_sites() const {
  switch (block) {
    case BlockKind::pair: return {0, 1};
    case BlockKind::quartet: return {0, 1, 2, 3};
    case BlockKind::octet: return {0, 1, 2, 3, 4, 5, 6, 7};
    case BlockKind::custom: return custom_block;
  }
  return {};
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i)
    g[i] = start + (stop - start) * i / (steps - 1);
  return g;
}

std::string to_string(SweepModel m) {
  switch (m) {
    case SweepModel::xy_symmetric: return "xy_symmetric";
    case SweepModel::xy_broken: return "xy_broken";
    case SweepModel::ashkin_teller: return "ashkin_teller";
  }
  return "?";
}

std::string to_string(BlockKind b) {
  switch (b) {
    case BlockKind::pair: return "pair";
    case BlockKind::quartet: return "quartet";
    case BlockKind::octet: return "octet";
    case BlockKind::custom: return "custom";
  }
  return "?";
}

static std::string to_string(GroundStateKind k) {
  switch (k) {
    case GroundStateKind::symmetric_thermal: return "symmetric_thermal";
    case GroundStateKind::broken_plus: return "broken_plus";
    case GroundStateKind::broken_minus: return "broken_minus";
    case GroundStateKind::raw_lowest: return "raw_lowest";
  }
  return "?";
}

std::string SweepSpec::canonical() const {
  std::ostringstream os;
  os << "model=" << to_string(model) << " swept=" << swept
     << " start=" << fmt(start) << " stop=" << fmt(stop) << " steps=" << steps
     << " gamma=" << fmt(gamma) << " lambda=" << fmt(lambda)
     << " beta=" << fmt(beta) << " delta=" << fmt(delta)
     << " n_spins=" << n_spins << " fermion_modes=" << fermion_modes
     << " block=" << to_string(block);
  if (block == BlockKind::custom) {
    os << ":";
    for (size_t i = 0; i < custom_block.size(); ++i)
      os << (i ? "," : "") << custom_block[i];
  }
  os << " ground_state=" << to_string(ground_state)
     << " oracle=" << (with_oracle ? 1 : 0);
  return os.str();
}

SweepRow evaluate_point(const SweepSpec& spec, double value) {
  SweepRow row;
  row.param = value;
  try {
    if (spec.model == SweepModel::xy_symmetric) {
      const FermionRing ring = solve_ring(value, spec.gamma, spec.fermion_modes);
      row.corr = symmetric_correlators(ring);
      row.witness = xstate_witness_norm(row.corr);
      row.energy = ring.energy_density;
      if (spec.with_oracle) {
        const DensityMatrix rho =
            xstate_from_correlators(row.corr).to_density_matrix();
        row.oracle_distance = classicality_distance(rho).distance;
      }
      return row;
    }

    GroundStateConfig cfg;
    ChainEnsemble state;
    std::vector<int> sites = spec.block_sites();
    if (spec.model == SweepModel::xy_broken) {
      XYParams p;
      p.n_spins = spec.n_spins;
      p.gamma = spec.gamma;
      p.lambda = value;
      const PauliStringOperator h = build_xy(p);
      const PauliStringOperator parity = xy_parity(spec.n_spins);
      const int sign = spec.ground_state == GroundStateKind::broken_minus ? -1 : 1;
      try {
        state = broken_ground_state(h, parity, sign, spec.seed, cfg);
      } catch (const std::runtime_error&) {
        // unique ground state (no SSB): fall back to the symmetric solution
        state = symmetric_ground_state(h, {parity}, spec.seed, cfg);
      }
    } else {
      ATParams p;
      p.n_sites = spec.n_spins / 2;
      p.beta = spec.swept == "beta" ? value : spec.beta;
      p.delta = spec.swept == "delta" ? value : spec.delta;
      const PauliStringOperator h = build_ashkin_teller(p);
      auto [p1, p2] = at_parity_operators(p);
      state = symmetric_ground_state(h, {p1, p2}, spec.seed, cfg);
    }

    const DensityMatrix block = state.reduced_state(sites);
    row.witness = witness_norm(block);
    row.corr = correlators_from_pair(
        state.reduced_density({sites[0], sites[1]}));
    row.energy = state.energy;
    row.sector_gap = state.sector_gap;
    row.residual = state.residual;
    if (spec.with_oracle)
      row.oracle_distance = classicality_distance(block).distance;
  } catch (const ConvergenceError& e) {
    row.converged = false;
    row.error = e.what();
    row.residual = e.residual;
    row.witness = std::nan("");
    row.energy = std::nan("");
  }
  return row;
}

namespace {

std::string row_to_line(const SweepRow& r) {
  std::ostringstream os;
  os << fmt(r.param) << ',' << fmt(r.witness) << ','
     << (r.oracle_distance ? fmt(*r.oracle_distance) : "") << ','
     << fmt(r.corr.G_z) << ',' << fmt(r.corr.G_xx) << ',' << fmt(r.corr.G_yy)
     << ',' << fmt(r.corr.G_zz) << ',' << fmt(r.energy) << ','
     << fmt(r.sector_gap) << ',' << fmt(r.residual);
  return os.str();
}

SweepRow row_from_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  if (fields.size() != 10)
    throw std::runtime_error("csv: malformed row: " + line);
  SweepRow r;
  r.param = std::stod(fields[0]);
  r.witness = std::stod(fields[1]);
  if (!fields[2].empty()) r.oracle_distance = std::stod(fields[2]);
  r.corr.G_z = std::stod(fields[3]);
  r.corr.G_xx = std::stod(fields[4]);
  r.corr.G_yy = std::stod(fields[5]);
  r.corr.G_zz = std::stod(fields[6]);
  r.energy = std::stod(fields[7]);
  r.sector_gap = std::stod(fields[8]);
  r.residual = std::stod(fields[9]);
  r.converged = !std::isnan(r.witness);
  return r;
}

constexpr const char* kColumns =
    "param,witness_norm,oracle_distance,G_z,G_xx,G_yy,G_zz,energy,sector_gap,"
    "residual";

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> grid = spec.grid();
  std::vector<SweepRow> rows(grid.size());
  std::vector<bool> have(grid.size(), false);

  // resume: rows already in the output file (in-order prefix or scattered)
  if (!spec.out.empty() && std::filesystem::exists(spec.out)) {
    std::ifstream in(spec.out);
    std::string line;
    bool header_ok = false;
    std::vector<SweepRow> old_rows;
    if (std::getline(in, line))
      header_ok = line == "# spec=" + spec.canonical() +
                              " seed=" + std::to_string(spec.seed);
    if (header_ok && std::getline(in, line) && line == kColumns)
      while (std::getline(in, line))
        if (!line.empty()) old_rows.push_back(row_from_line(line));
    if (header_ok) {
      for (const SweepRow& r : old_rows)
        for (size_t i = 0; i < grid.size(); ++i)
          if (!have[i] && fmt(grid[i]) == fmt(r.param)) {
            rows[i] = r;
            have[i] = true;
            break;
          }
    }
  }

  // incremental in-order writer; completed prefix survives a crash
  std::ofstream out;
  size_t next_write = 0;
  std::vector<bool> done = have;
  std::mutex io_mutex;
  if (!spec.out.empty()) {
    out.open(spec.out, std::ios::trunc);
    if (!out) throw std::runtime_error("sweep: cannot open " + spec.out);
    out << "# spec=" << spec.canonical() << " seed=" << spec.seed << "\n"
        << kColumns << "\n";
    out.flush();
  }
  auto flush_ready = [&] {
    while (next_write < grid.size() && done[next_write]) {
      if (out.is_open()) out << row_to_line(rows[next_write]) << "\n" << std::flush;
      ++next_write;
    }
  };
  {
    std::lock_guard<std::mutex> lock(io_mutex);
    flush_ready();
  }

  std::atomic<size_t> next{0};
  const int workers = std::max(1, spec.workers);
  auto work = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= grid.size()) break;
      if (have[i]) continue;
      SweepRow r = evaluate_point(spec, grid[i]);
      std::lock_guard<std::mutex> lock(io_mutex);
      rows[i] = std::move(r);
      done[i] = true;
      flush_ready();
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

void write_csv(const std::string& path, const SweepSpec& spec,
               const std::vector<SweepRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("csv: cannot open " + path);
  out << "# spec=" << spec.canonical() << " seed=" << spec.seed << "\n";
  out << kColumns << "\n";
  for (const SweepRow& r : rows) out << row_to_line(r) << "\n";
}

std::vector<SweepRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path);
  std::vector<SweepRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("param,", 0) == 0) continue;
    rows.push_back(row_from_line(line));
  }
  return rows;
}

std::vector<double> derivative_scan(const std::vector<double>& x,
                                    const std::vector<double>& y,
                                    Stencil stencil) {
  const size_t n = x.size();
  if (n != y.size() || n < 3)
    throw std::invalid_argument("derivative_scan: need >= 3 samples");
  const double h = x[1] - x[0];
  for (size_t i = 1; i + 1 < n; ++i)
    if (std::abs((x[i + 1] - x[i]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw std::invalid_argument("derivative_scan: non-uniform grid");

  std::vector<double> d(n);
  d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
  d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
  for (size_t i = 1; i + 1 < n; ++i) {
    if (stencil == Stencil::central4 && i >= 2 && i + 2 < n)
      d[i] = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / (12.0 * h);
    else
      d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
  }
  return d;
}

std::vector<ClassicalCandidate> find_classical_points(
    const std::vector<SweepRow>& rows, double threshold) {
  std::vector<ClassicalCandidate> out;
  const int n = static_cast<int>(rows.size());
  for (int i = 0; i < n; ++i) {
    if (!rows[i].converged || rows[i].witness >= threshold) continue;
    const bool left_ok = i == 0 || !rows[i - 1].converged ||
                         rows[i].witness <= rows[i - 1].witness;
    const bool right_ok = i == n - 1 || !rows[i + 1].converged ||
                          rows[i].witness <= rows[i + 1].witness;
    if (left_ok && right_ok)
      out.push_back({i, rows[i].param, rows[i].witness});
  }
  return out;
}

void apply_key_value(SweepSpec& spec, const std::string& key,
                     const std::string& value) {
  auto bad = [&] {
    throw std::invalid_argument("config: bad value for " + key + ": " + value);
  };
  if (key == "model") {
    if (value == "xy_symmetric") spec.model = SweepModel::xy_symmetric;
    else if (value == "xy_broken") spec.model = SweepModel::xy_broken;
    else if (value == "ashkin_teller") spec.model = SweepModel::ashkin_teller;
    else bad();
  } else if (key == "swept") {
    spec.swept = value;
  } else if (key == "start") {
    spec.start = std::stod(value);
  } else if (key == "stop") {
    spec.stop = std::stod(value);
  } else if (key == "steps") {
    spec.steps = std::stoi(value);
  } else if (key == "gamma") {
    spec.gamma = std::stod(value);
  } else if (key == "lambda") {
    spec.lambda = std::stod(value);
  } else if (key == "beta") {
    spec.beta = std::stod(value);
  } else if (key == "delta") {
    spec.delta = std::stod(value);
  } else if (key == "n_spins" || key == "n-spins") {
    spec.n_spins = std::stoi(value);
  } else if (key == "fermion_modes" || key == "fermion-modes") {
    spec.fermion_modes = std::stoi(value);
  } else if (key == "block") {
    if (value == "pair") spec.block = BlockKind::pair;
    else if (value == "quartet") spec.block = BlockKind::quartet;
    else if (value == "octet") spec.block = BlockKind::octet;
    else {
      spec.block = BlockKind::custom;
      spec.custom_block.clear();
      std::stringstream ss(value);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) spec.custom_block.push_back(std::stoi(tok));
      }
      if (spec.custom_block.empty()) bad();
    }
  } else if (key == "ground_state" || key == "ground-state") {
    if (value == "symmetric_thermal") spec.ground_state = GroundStateKind::symmetric_thermal;
    else if (value == "broken_plus") spec.ground_state = GroundStateKind::broken_plus;
    else if (value == "broken_minus") spec.ground_state = GroundStateKind::broken_minus;
    else if (value == "raw_lowest") spec.ground_state = GroundStateKind::raw_lowest;
    else bad();
  } else if (key == "oracle") {
    spec.with_oracle = value == "1" || value == "true";
  } else if (key == "out") {
    spec.out = value;
  } else if (key == "seed") {
    spec.seed = std::stoull(value);
  } else if (key == "workers") {
    spec.workers = std::stoi(value);
  } else {
    throw std::invalid_argument("config: unknown key " + key);
  }
}

SweepSpec parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  SweepSpec spec;
  std::string line;
  while (std::getline(in, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) apply_key_value(spec, key, value);
  }
  return spec;
}

}  // namespace qwit
