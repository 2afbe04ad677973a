#ifndef CSS2D_EVOLUTION_HPP
#define CSS2D_EVOLUTION_HPP

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "css2d/gauge.hpp"

namespace css2d {

enum class Mode { Direct, Parasplit };
enum class Scheme { StrangRK4 };

Mode parse_mode(const std::string& s);
std::string to_string(Mode m);

struct StepperConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::StrangRK4;
  /// Radius of the sharp spectral cutoff chi_mu applied to P_B; none by default.
  std::optional<double> cutoff_mu;
  double kappa = 1.0;
  Mode mode = Mode::Direct;
  /// Diagnostic switch: with false, A_0 = A_x = 0 and the system is cubic NLS.
  bool gauge_coupling = true;

  void validate(const Grid& grid) const;
};

/// e^{i tau Laplacian}: the multiplier exp(-i tau |xi|^2).
ComplexField linear_propagate(const ComplexField& u, double tau);

/// One step of (d_t - i Laplacian + P_B) u = 0: half free step, RK4 on
/// u' = -chi_mu P_B u over dt with B frozen, half free step. B is the value
/// at the step midpoint and must be divergence free.
ComplexField principal_step(const ComplexField& u, const RealVectorField& b, double dt,
                            std::optional<double> cutoff_mu = std::nullopt);
ComplexField principal_step(const ComplexField& u, const RealVectorField& b, const StepperConfig& cfg);

/// Right-hand side of (d_t - i Laplacian) phi = N(phi) with the gauge
/// recomputed from phi. In parasplit mode the P_{A_x} part is dropped.
ComplexField css_rhs(const ComplexField& phi, const StepperConfig& cfg);
/// Same, reusing an already computed gauge.
ComplexField css_rhs(const ComplexField& phi, const GaugePotential& gauge, const StepperConfig& cfg);
GaugePotential slaved_gauge(const ComplexField& phi, const StepperConfig& cfg);

struct DiagnosticRow {
  double t, mass, energy, h1, hs, div_res, curl_res, cert_grad_l1linf, cert_sup;
};

struct Trajectory {
  double dt = 0.0;
  int stride = 1;
  double s = 1.0;
  double kappa = 0.0;
  std::vector<double> times;
  std::vector<ComplexField> phi;
  std::vector<GaugePotential> gauge;
  std::vector<DiagnosticRow> rows;
  AdmissibleFormCert cert;
  std::vector<std::string> warnings;

  const GridPtr& grid_ptr() const { return phi.front().grid_ptr(); }
  double snapshot_spacing() const { return dt * stride; }
  void write_csv(const std::filesystem::path& path) const;
  /// phi_0000.bin/json, ax1_0000, ax2_0000, a0_0000, ... under dir.
  void write_snapshots(const std::filesystem::path& dir) const;
};

void write_metrics_csv(const std::filesystem::path& path, const std::vector<DiagnosticRow>& rows);

struct EvolveOptions {
  int stride = 1;
  /// Regularity of the hs column.
  double s = 1.0;
  /// Ceiling for ||phi||_{H^1}; defaults to blowup_factor times the initial value.
  std::optional<double> blowup_ceiling;
  double blowup_factor = 1e3;
  /// Without snapshots only the initial and final states are kept.
  bool keep_snapshots = true;
  /// Per-step diagnostics (mass, energy, norms, residuals).
  bool record_rows = true;
};

/// Strang/RK4 integration of the Coulomb-gauge system up to t_end.
Trajectory evolve(const ComplexField& phi0, double t_end, const StepperConfig& cfg,
                  const EvolveOptions& opt = {});

/// Number of steps of size dt in t_end; throws unless dt divides t_end.
int step_count(double t_end, double dt);

}  // namespace css2d

#endif  // CSS2D_EVOLUTION_HPP
