#ifndef CSS2D_ITERATION_HPP
#define CSS2D_ITERATION_HPP

#include <filesystem>
#include <optional>
#include <vector>

#include "css2d/evolution.hpp"

namespace css2d {

struct PicardConfig {
  double s = 1.0;
  /// Stand-in for the existence constant in T = delta (1+M)^{-28}.
  double delta = 0.5;
  int max_outer = 20;
  /// Stop once sup_t ||phi^[n+1] - phi^[n]||_{H^{s-1}} <= tol_outer.
  double tol_outer = 1e-12;
  /// Sweep-to-sweep tolerance of the inner solve; tol_outer / 10 when unset.
  std::optional<double> tol_inner;
  int max_sweeps = 100;
  /// Radius of the H^s ball the probes accept data from.
  double radius = 0.5;
  /// Horizon; existence_time(||phi_in||_{H^s}) when unset.
  std::optional<double> t_end;
  /// dt is a target: the horizon is split into the fewest steps no longer than it.
  /// kappa, gauge_coupling and cutoff_mu are used as given; the mode is ignored.
  StepperConfig stepper;

  double inner_tolerance() const { return tol_inner.value_or(0.1 * tol_outer); }
  void validate() const;
};

/// min(1, delta (1+M)^{-28}).
double existence_time(double m, const PicardConfig& cfg);

struct PicardIterate {
  int n = 0;
  /// sup_t ||phi^[n+1] - phi^[n]||_{H^{s-1}}; NaN for the last iterate.
  double d = 0.0;
  /// d_{n+1} / d_n when d_n is above the noise floor, else NaN.
  double ratio = 0.0;
  int sweeps = 0;
  bool inner_converged = true;
  /// Certificate and max divergence of A_x^[n].
  AdmissibleFormCert cert;
  double max_div = 0.0;
};

struct PicardReport {
  double t_end = 0.0;
  double dt = 0.0;
  std::vector<PicardIterate> iterations;
  bool converged = false;
  /// Over the measured r_n with n >= 2.
  bool all_ratios_le_half = true;
  int measured_ratios = 0;
  Trajectory final;

  void write_csv(const std::filesystem::path& path) const;
};

/// Outer scheme (d_t - i Laplacian + P_{A^[n-1]}) phi^[n] = Q-part of the
/// nonlinearity at phi^[n], starting from A^[0] = 0. Each outer step is solved
/// by lagged right-hand-side sweeps over the whole interval.
PicardReport picard_run(const ComplexField& phi_in, const PicardConfig& cfg);

struct LipschitzProbe {
  double ratio = 1.0;
  /// Identical data: 0/0, reported as ratio 1.
  bool degenerate = false;
};

/// sup_t ||phi - phi'||_{H^{s-1}} / ||phi(0) - phi'(0)||_{H^{s-1}} on [0, t_end].
LipschitzProbe weak_lipschitz_probe(const ComplexField& phi_in, const ComplexField& phi_in2, double t_end,
                                    const PicardConfig& cfg);

/// sup_t ||phi(t)||_{H^s} / ||phi(0)||_{H^s} up to cfg.t_end or the existence time.
double norm_growth_probe(const ComplexField& phi_in, const PicardConfig& cfg);

/// Uniform step no longer than dt_target that divides t_end.
double fitted_step(double t_end, double dt_target);

}  // namespace css2d

#endif  // CSS2D_ITERATION_HPP
