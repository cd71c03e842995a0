#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qwit/eigensolver.hpp"
#include "qwit/witness.hpp"

namespace qwit {

enum class SweepModel { xy_symmetric, xy_broken, ashkin_teller };
enum class BlockKind { pair, quartet, octet, custom };

struct SweepSpec {
  SweepModel model = SweepModel::xy_symmetric;
  std::string swept = "lambda";  // "lambda", "beta" or "delta"
  double start = 0.0;
  double stop = 3.0;
  int steps = 301;

  // fixed parameters (whichever the model does not sweep)
  double gamma = 0.6;
  double lambda = 1.0;
  double beta = 1.0;
  double delta = 3.0;

  int n_spins = 12;          // chain length for the ED models
  int fermion_modes = 2048;  // ring size for the free-fermion path
  BlockKind block = BlockKind::pair;
  std::vector<int> custom_block;
  GroundStateKind ground_state = GroundStateKind::symmetric_thermal;

  bool with_oracle = false;
  std::string out;
  uint64_t seed = 1;
  int workers = 1;

  void validate() const;
  std::vector<int> block_sites() const;
  std::vector<double> grid() const;
  /// Canonical one-line form used in the CSV header; independent of the
  /// output path and worker count.
  std::string canonical() const;
};

struct SweepRow {
  double param = 0.0;
  double witness = 0.0;
  std::optional<double> oracle_distance;
  CorrelatorSet corr;
  double energy = 0.0;
  double sector_gap = 0.0;
  double residual = 0.0;
  bool converged = true;
  std::string error;  // recorded per row, the sweep continues
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Evaluates one grid point; exposed for tests and resumable runs.
SweepRow evaluate_point(const SweepSpec& spec, double value);

enum class Stencil { central2, central4 };

/// First derivative on a uniform grid; one-sided stencils at the ends.
std::vector<double> derivative_scan(const std::vector<double>& x,
                                    const std::vector<double>& y,
                                    Stencil stencil = Stencil::central2);

struct ClassicalCandidate {
  int index = 0;
  double param = 0.0;
  double witness = 0.0;
};

/// Local minima of the witness below `threshold`.
std::vector<ClassicalCandidate> find_classical_points(
    const std::vector<SweepRow>& rows, double threshold);

// CSV: header `# spec=<canonical> seed=<n>`, then one row per grid point
// with 17-significant-digit floats; empty oracle field when not computed.
void write_csv(const std::string& path, const SweepSpec& spec,
               const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv(const std::string& path);

/// Flat key=value config (one per line, '#' comments).
SweepSpec parse_config_file(const std::string& path);
void apply_key_value(SweepSpec& spec, const std::string& key,
                     const std::string& value);

std::string to_string(SweepModel m);
std::string to_string(BlockKind b);

}  // namespace qwit
