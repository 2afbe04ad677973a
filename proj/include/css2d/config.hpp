#ifndef CSS2D_CONFIG_HPP
#define CSS2D_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>

#include "css2d/evolution.hpp"
#include "css2d/iteration.hpp"

namespace css2d {

enum class DataKind { Gaussian, PlaneWave, RandomHs };
enum class Solver { Evolve, Picard };

DataKind parse_data_kind(const std::string& s);
std::string to_string(DataKind k);
Solver parse_solver(const std::string& s);
std::string to_string(Solver s);

struct SimConfig {
  struct GridSection {
    int n = 64;
    double length = 16.0 * std::numbers::pi;
    bool operator==(const GridSection&) const = default;
  } grid;
  struct PhysicsSection {
    double kappa = 1.0;
    double s = 1.0;
    bool gauge_coupling = true;
    bool operator==(const PhysicsSection&) const = default;
  } physics;
  struct StepperSection {
    double dt = 1e-3;
    double t_end = 1.0;
    Mode mode = Mode::Direct;
    std::optional<double> cutoff_mu;
    bool operator==(const StepperSection&) const = default;
  } stepper;
  struct DataSection {
    DataKind kind = DataKind::Gaussian;
    double amplitude = 0.3;
    double width = 6.0;
    /// Gaussian centre; the middle of the box when unset.
    std::optional<double> x1, x2;
    /// Carrier of the Gaussian, wavevector of the plane wave.
    double k1 = 0.0, k2 = 0.0;
    /// random_hs: decay exponent of |c_xi| ~ (1+|xi|)^{-slope}; s+1 when unset.
    std::optional<double> slope;
    /// random_hs: target ||.||_{H^s}, the radius D of the data ball.
    double radius = 0.5;
    std::optional<std::uint64_t> seed;
    bool operator==(const DataSection&) const = default;
  } data;
  struct RunSection {
    Solver solver = Solver::Evolve;
    int stride = 10;
    std::string output_dir = "out";
    std::optional<double> blowup_ceiling;
    bool operator==(const RunSection&) const = default;
  } run;
  struct PicardSection {
    double delta = 0.5;
    double tol_outer = 1e-12;
    std::optional<double> tol_inner;
    int max_outer = 20;
    int max_sweeps = 100;
    /// Integrate up to existence_time(||phi_in||_{H^s}) instead of stepper.t_end.
    bool existence_horizon = true;
    bool operator==(const PicardSection&) const = default;
  } picard;

  bool operator==(const SimConfig&) const = default;

  void validate() const;
  /// The evolve solver needs dt to divide t_end; Picard fits its own step.
  bool solver_needs_divisible_step() const;
  GridPtr make_grid() const;
  StepperConfig stepper_config() const;
  PicardConfig picard_config() const;
  EvolveOptions evolve_options() const;
};

/// INI text with sections [grid] [physics] [stepper] [data] [run] [picard].
/// Unknown keys are rejected; missing keys keep their defaults.
SimConfig parse_config(const std::string& text);
SimConfig load_config(const std::filesystem::path& path);
std::string serialize(const SimConfig& cfg);

}  // namespace css2d

#endif  // CSS2D_CONFIG_HPP
