#ifndef CSS2D_RUNNER_HPP
#define CSS2D_RUNNER_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "css2d/config.hpp"

namespace css2d {

enum ExitCode : int { kExitOk = 0, kExitInvariant = 2, kExitBlowup = 3, kExitConfig = 4 };

/// CSS2D_OUTDIR when set, else cfg.run.output_dir.
std::filesystem::path resolve_output_dir(const SimConfig& cfg);

struct RunReport {
  int exit_code = kExitOk;
  std::filesystem::path output_dir;
  std::vector<std::string> messages;
};

/// Evolves (or runs the Picard scheme) and writes config.ini, metrics.csv or
/// picard.csv, snapshots/ and summary.json under the output directory.
RunReport run(const SimConfig& cfg);

struct InvariantCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Partition identity, Littlewood-Paley partition, gauge constraints and
/// conservation on a short run of the configured data.
std::vector<InvariantCheck> check_invariants(const SimConfig& cfg);

struct ConvergenceReport {
  std::vector<double> dts;
  /// ||phi_dt(T) - phi_{dt/2}(T)||_inf between consecutive levels.
  std::vector<double> dt_errors;
  std::vector<double> dt_orders;
  std::vector<int> ns;
  /// Spectral error of each n against a run at twice the finest n.
  std::vector<double> n_errors;
  double n_drop = 0.0;
  bool dt_pass = false;
  bool n_pass = false;
};

/// dt ladder dt, dt/2, ..., dt/2^{levels-1} at the configured n, and an n
/// ladder {32, 64} against a reference at n = 128 in the configured box.
ConvergenceReport convergence(const SimConfig& cfg, int levels);

/// Field on a coarser or finer grid of the same box with the same Fourier
/// coefficients where both grids have them.
ComplexField resample(const ComplexField& u, const GridPtr& target);

}  // namespace css2d

#endif  // CSS2D_RUNNER_HPP
