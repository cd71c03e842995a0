// Command-line driver: parameter sweeps over spin-chain models, numerical
// derivatives, classical-point detection and single-state classicality
// checks. Exit codes: 0 success, 2 spec error, 3 convergence failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qwit/oracle.hpp"
#include "qwit/sweep.hpp"
#include "qwit/xy_fermion.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSpecError = 2;
constexpr int kExitConvergence = 3;

qwit::DensityMatrix load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file: " + path);
  std::string first;
  std::getline(in, first);
  std::istringstream dims_in(first);
  qwit::Partition part;
  int d;
  while (dims_in >> d) part.dims.push_back(d);
  part.validate();
  const Eigen::Index n = part.total_dim();
  qwit::Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      std::string tok;
      if (!(in >> tok))
        throw std::invalid_argument("state file: too few entries");
      double re = 0, im = 0;
      if (std::sscanf(tok.c_str(), "%lf,%lf", &re, &im) != 2)
        throw std::invalid_argument("state file: bad entry " + tok);
      m(r, c) = qwit::Complex(re, im);
    }
  return qwit::DensityMatrix::checked(std::move(m), std::move(part));
}

int run_selftest() {
  using namespace qwit;
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", name);
    if (!ok) ++failures;
  };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  // Phi idempotence and trace preservation on random two-qubit states
  {
    bool idem = true, tr = true;
    for (int t = 0; t < 25; ++t) {
      Matrix g(4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          g(i, j) = Complex(u01(rng) - 0.5, u01(rng) - 0.5);
      Matrix r = g * g.adjoint();
      r /= r.trace();
      DensityMatrix rho = DensityMatrix::checked(r, Partition::qubits(2));
      MeasurementAngles ang{{{u01(rng) * 3.14, u01(rng) * 6.28},
                             {u01(rng) * 3.14, u01(rng) * 6.28}}};
      LocalMeasurement meas = ang.to_measurement();
      DensityMatrix once = apply_measurement(rho, meas);
      DensityMatrix twice = apply_measurement(once, meas);
      idem &= (twice.rho - once.rho).cwiseAbs().maxCoeff() <= 1e-12;
      tr &= std::abs(once.rho.trace().real() - 1.0) <= 1e-12;
    }
    check("measurement map idempotent", idem);
    check("measurement map trace preserving", tr);
  }

  // closed form vs matrix path on random valid X-states
  {
    bool ok = true;
    for (int t = 0; t < 200; ++t) {
      CorrelatorSet c;
      c.G_z = 2.0 * u01(rng) - 1.0;
      c.G_xx = 2.0 * u01(rng) - 1.0;
      c.G_yy = 2.0 * u01(rng) - 1.0;
      c.G_zz = 2.0 * u01(rng) - 1.0;
      XStateParams x;
      try {
        x = xstate_from_correlators(c);
      } catch (const std::invalid_argument&) {
        continue;
      }
      CorrelatorSet back;
      back.G_z = x.a - x.d;
      back.G_xx = 2.0 * (x.z + x.f);
      back.G_yy = 2.0 * (x.z - x.f);
      const double closed = xstate_witness_norm(back);
      const double direct = witness_norm(
          DensityMatrix::checked(x.to_matrix(), Partition::qubits(2)));
      ok &= std::abs(closed - direct) <= 1e-12;
    }
    check("X-state closed form matches matrix path", ok);
  }

  // witness vanishes on constructed classical states
  {
    bool ok = true;
    for (int t = 0; t < 50; ++t) {
      MeasurementAngles ang{{{u01(rng) * 3.14, u01(rng) * 6.28},
                             {u01(rng) * 3.14, u01(rng) * 6.28}}};
      std::vector<double> probs(4);
      double s = 0;
      for (double& p : probs) s += (p = u01(rng) + 1e-3);
      for (double& p : probs) p /= s;
      // renormalize exactly
      double acc = 0;
      for (size_t i = 0; i + 1 < probs.size(); ++i) acc += probs[i];
      probs.back() = 1.0 - acc;
      DensityMatrix rho = make_classical_state(Partition::qubits(2),
                                               ang.to_measurement(), probs);
      ok &= witness_norm(rho) <= 1e-10;
    }
    check("classical states have zero witness", ok);
  }

  // factorization point arithmetic
  check("factorization point gamma=0.6",
        std::abs(factorization_point(0.6) - 1.25) < 1e-12);

  std::printf("%s\n", failures == 0 ? "selftest passed" : "selftest FAILED");
  return failures == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonclassicality witness toolkit for spin chains"};
  app.require_subcommand(1);

  qwit::SweepSpec spec;
  std::string config_path;
  std::string model_str, block_str, ground_str, swept_str;
  std::optional<double> opt_start, opt_stop, opt_gamma, opt_beta, opt_delta;
  std::optional<int> opt_steps, opt_nspins, opt_workers, opt_modes;
  std::optional<std::string> opt_out;
  std::optional<uint64_t> opt_seed;
  bool oracle_flag = false;

  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
  sweep_cmd->add_option("--config", config_path, "key=value config file");
  sweep_cmd->add_option("--model", model_str,
                        "xy_symmetric | xy_broken | ashkin_teller");
  sweep_cmd->add_option("--swept", swept_str, "lambda | beta | delta");
  sweep_cmd->add_option("--lambda-start", opt_start, "grid start");
  sweep_cmd->add_option("--lambda-stop", opt_stop, "grid stop");
  sweep_cmd->add_option("--start", opt_start, "grid start (alias)");
  sweep_cmd->add_option("--stop", opt_stop, "grid stop (alias)");
  sweep_cmd->add_option("--steps", opt_steps, "grid points");
  sweep_cmd->add_option("--gamma", opt_gamma, "XY anisotropy");
  sweep_cmd->add_option("--beta", opt_beta, "AT beta");
  sweep_cmd->add_option("--delta", opt_delta, "AT delta");
  sweep_cmd->add_option("--n-spins", opt_nspins, "chain length (spins)");
  sweep_cmd->add_option("--fermion-modes", opt_modes, "free-fermion ring size");
  sweep_cmd->add_option("--block", block_str, "pair | quartet | octet | i,j,...");
  sweep_cmd->add_option("--ground-state", ground_str,
                        "symmetric_thermal | broken_plus | broken_minus");
  sweep_cmd->add_flag("--oracle", oracle_flag, "also run the classicality oracle");
  sweep_cmd->add_option("--out", opt_out, "output CSV path");
  sweep_cmd->add_option("--seed", opt_seed, "RNG seed");
  sweep_cmd->add_option("--workers", opt_workers, "worker threads");

  std::string deriv_in, deriv_out, stencil_str = "central-2";
  auto* deriv_cmd = app.add_subcommand("derivative",
                                       "finite-difference derivative of a sweep CSV");
  deriv_cmd->add_option("input", deriv_in, "sweep CSV")->required();
  deriv_cmd->add_option("--out", deriv_out, "output CSV (default stdout)");
  deriv_cmd->add_option("--stencil", stencil_str, "central-2 | central-4");

  std::string classify_in;
  double classify_threshold = 1e-5;
  auto* classify_cmd =
      app.add_subcommand("classify", "detect classical points in a sweep CSV");
  classify_cmd->add_option("input", classify_in, "sweep CSV")->required();
  classify_cmd->add_option("--threshold", classify_threshold,
                           "witness threshold for candidates");

  std::string oracle_state;
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "classicality distance of a state read from file");
  oracle_cmd->add_option("state", oracle_state, "state file")->required();

  app.add_subcommand("selftest", "run the built-in invariant checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep_cmd->parsed()) {
      if (!config_path.empty()) spec = qwit::parse_config_file(config_path);
      if (!model_str.empty()) qwit::apply_key_value(spec, "model", model_str);
      if (!swept_str.empty()) qwit::apply_key_value(spec, "swept", swept_str);
      if (opt_start) spec.start = *opt_start;
      if (opt_stop) spec.stop = *opt_stop;
      if (opt_steps) spec.steps = *opt_steps;
      if (opt_gamma) spec.gamma = *opt_gamma;
      if (opt_beta) spec.beta = *opt_beta;
      if (opt_delta) spec.delta = *opt_delta;
      if (opt_nspins) spec.n_spins = *opt_nspins;
      if (opt_modes) spec.fermion_modes = *opt_modes;
      if (!block_str.empty()) qwit::apply_key_value(spec, "block", block_str);
      if (!ground_str.empty())
        qwit::apply_key_value(spec, "ground_state", ground_str);
      if (oracle_flag) spec.with_oracle = true;
      if (opt_out) spec.out = *opt_out;
      if (opt_seed) spec.seed = *opt_seed;
      if (opt_workers) spec.workers = *opt_workers;
      if (spec.model == qwit::SweepModel::ashkin_teller && spec.swept == "lambda")
        spec.swept = "beta";

      const auto rows = qwit::run_sweep(spec);
      int bad = 0;
      for (const auto& r : rows)
        if (!r.converged) ++bad;
      if (spec.out.empty())
        for (const auto& r : rows)
          std::printf("%.17g,%.17g\n", r.param, r.witness);
      if (bad > 0) {
        std::fprintf(stderr, "%d grid point(s) failed to converge\n", bad);
        return kExitConvergence;
      }
      return kExitOk;
    }

    if (deriv_cmd->parsed()) {
      const auto rows = qwit::read_csv(deriv_in);
      std::vector<double> x, y;
      for (const auto& r : rows) {
        x.push_back(r.param);
        y.push_back(r.witness);
      }
      const auto stencil = stencil_str == "central-4" ? qwit::Stencil::central4
                                                      : qwit::Stencil::central2;
      const auto d = qwit::derivative_scan(x, y, stencil);
      std::ostream* os = &std::cout;
      std::ofstream file;
      if (!deriv_out.empty()) {
        file.open(deriv_out, std::ios::trunc);
        os = &file;
      }
      (*os) << "param,dwitness\n";
      char buf[80];
      for (size_t i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x[i], d[i]);
        (*os) << buf;
      }
      return kExitOk;
    }

    if (classify_cmd->parsed()) {
      const auto rows = qwit::read_csv(classify_in);
      const auto cands = qwit::find_classical_points(rows, classify_threshold);
      std::printf("param,witness_norm\n");
      for (const auto& c : cands)
        std::printf("%.17g,%.17g\n", c.param, c.witness);
      return kExitOk;
    }

    if (oracle_cmd->parsed()) {
      const qwit::DensityMatrix rho = load_state_file(oracle_state);
      const qwit::OracleResult res = qwit::classicality_distance(rho);
      std::printf("classicality_distance=%.17g\n", res.distance);
      std::printf("grid_lower_bound=%.17g\n", res.grid_lower_bound);
      for (const auto& a : res.argmin.angles)
        std::printf("theta=%.17g phi=%.17g\n", a.theta, a.phi);
      return kExitOk;
    }

    return run_selftest();
  } catch (const qwit::ConvergenceError& e) {
    std::fprintf(stderr, "convergence failure: %s\n", e.what());
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSpecError;
  }
}
