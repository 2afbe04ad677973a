#include "css2d/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <json.hpp>
#include <numbers>

#include "css2d/diagnostics.hpp"
#include "css2d/dyadic.hpp"
#include "css2d/initial_data.hpp"
#include "css2d/paradiff.hpp"
#include "css2d/spectral.hpp"

namespace css2d {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

json cert_json(const AdmissibleFormCert& c) {
  return {{"sup_norm", c.sup_norm}, {"grad_l1linf", c.grad_l1linf}, {"div_residual", c.div_residual}};
}

// Random field with Fourier support in max |j| <= cutoff.
ComplexField band_limited(const GridPtr& g, std::uint64_t seed, int cutoff) {
  ComplexField u = random_hs_data(g, 1.0, 1.0, 1.0, seed);
  SpectralField c = to_spectral(u);
  for (int p = 0; p < g->n(); ++p)
    for (int q = 0; q < g->n(); ++q)
      if (std::max(std::abs(g->signed_index(p)), std::abs(g->signed_index(q))) > cutoff) c.coeffs()(p, q) = 0.0;
  u = to_physical(c);
  return (1.0 / linf_norm(u)) * u;
}

RealVectorField solenoidal(const GridPtr& g, std::uint64_t seed, int cutoff) {
  const ComplexField psi = to_complex(RealField(g, band_limited(g, seed, cutoff).values().real()));
  return RealVectorField(real_part(derivative(psi, Axis::Two)), real_part(-1.0 * derivative(psi, Axis::One)));
}

InvariantCheck check(std::string name, double value, double tol) { return {std::move(name), value, tol, value <= tol}; }

}  // namespace

fs::path resolve_output_dir(const SimConfig& cfg) {
  if (const char* env = std::getenv("CSS2D_OUTDIR"); env && *env) return env;
  return cfg.run.output_dir;
}

RunReport run(const SimConfig& cfg) {
  cfg.validate();
  RunReport rep;
  rep.output_dir = resolve_output_dir(cfg);
  fs::create_directories(rep.output_dir / "snapshots");
  {
    std::ofstream out(rep.output_dir / "config.ini");
    if (!out) throw Error("cannot write " + (rep.output_dir / "config.ini").string());
    out << serialize(cfg);
  }
  const GridPtr g = cfg.make_grid();
  const ComplexField phi0 = make_initial_data(cfg, g);
  json summary = {{"solver", to_string(cfg.run.solver)}, {"n", g->n()}, {"L", g->length()}};

  try {
    if (cfg.run.solver == Solver::Evolve) {
      const Trajectory tr = evolve(phi0, cfg.stepper.t_end, cfg.stepper_config(), cfg.evolve_options());
      tr.write_csv(rep.output_dir / "metrics.csv");
      tr.write_snapshots(rep.output_dir / "snapshots");
      const DiagnosticRow& a = tr.rows.front();
      const DiagnosticRow& b = tr.rows.back();
      summary["t_end"] = b.t;
      summary["steps"] = tr.rows.size() - 1;
      summary["mass_drift"] = a.mass > 0.0 ? std::abs(b.mass - a.mass) / a.mass : 0.0;
      summary["energy_drift"] = a.energy != 0.0 ? std::abs(b.energy - a.energy) / std::abs(a.energy) : 0.0;
      summary["certificate"] = cert_json(tr.cert);
      summary["warnings"] = tr.warnings;
      rep.messages = tr.warnings;
    } else {
      const PicardReport pr = picard_run(phi0, cfg.picard_config());
      pr.write_csv(rep.output_dir / "picard.csv");
      Trajectory thin = pr.final;
      // keep every stride-th step of the final iterate
      Trajectory out;
      out.dt = thin.dt;
      out.stride = cfg.run.stride;
      for (std::size_t k = 0; k < thin.phi.size(); ++k)
        if (k % cfg.run.stride == 0 || k + 1 == thin.phi.size()) {
          out.times.push_back(thin.times[k]);
          out.phi.push_back(thin.phi[k]);
          out.gauge.push_back(thin.gauge[k]);
        }
      out.write_snapshots(rep.output_dir / "snapshots");
      summary["t_end"] = pr.t_end;
      summary["dt"] = pr.dt;
      summary["iterations"] = pr.iterations.size();
      summary["converged"] = pr.converged;
      summary["all_ratios_le_half"] = pr.all_ratios_le_half;
      summary["measured_ratios"] = pr.measured_ratios;
      summary["certificate"] = cert_json(pr.final.cert);
      summary["warnings"] = pr.final.warnings;
      rep.messages = pr.final.warnings;
    }
  } catch (const BlowupError& e) {
    summary["blowup"] = {{"t", e.time}, {"h1", e.h1_norm}, {"message", e.what()}};
    write_json(rep.output_dir / "summary.json", summary);
    rep.exit_code = kExitBlowup;
    rep.messages.push_back(e.what());
    return rep;
  }
  write_json(rep.output_dir / "summary.json", summary);
  return rep;
}

std::vector<InvariantCheck> check_invariants(const SimConfig& cfg) {
  cfg.validate();
  std::vector<InvariantCheck> out;
  constexpr double two_pi = 2.0 * std::numbers::pi;

  double worst = 0.0;
  for (int n : {32, 64}) {
    const GridPtr g = Grid::create(n, two_pi);
    for (std::uint64_t k = 0; k < 5; ++k) {
      const RealVectorField b = solenoidal(g, 100 + k, n / 6);
      const ComplexField w = band_limited(g, 200 + k, n / 6);
      worst = std::max(worst, partition_residual(b, w));
    }
  }
  out.push_back(check("paraproduct partition P + Q = 2 B.grad", worst, 1e-11));

  const GridPtr g = cfg.make_grid();
  const auto ladder = DyadicLadder::for_grid(g);
  const RArray total = ladder->cumulative_multiplier(ladder->bands().back());
  out.push_back(check("Littlewood-Paley partition of unity", (total - 1.0).abs().maxCoeff(), 1e-14));

  // short run of the configured data with at most 100 steps
  StepperConfig sc = cfg.stepper_config();
  const int steps = std::min(100, static_cast<int>(std::lround(cfg.stepper.t_end / sc.dt)));
  EvolveOptions opt = cfg.evolve_options();
  opt.stride = 1;
  const Trajectory tr = evolve(make_initial_data(cfg, g), steps * sc.dt, sc, opt);
  double div = 0.0, curl = 0.0;
  for (std::size_t k = 0; k < tr.phi.size(); ++k) {
    const double scale = std::max({linf_norm(tr.gauge[k].ax), linf_norm(charge_density(tr.phi[k])), 1e-300});
    div = std::max(div, divergence_residual(tr.gauge[k].ax) / scale);
    if (sc.gauge_coupling) curl = std::max(curl, curl_residual(tr.gauge[k].ax, tr.phi[k]) / scale);
  }
  out.push_back(check("Coulomb constraint div A = 0", div, 1e-12));
  out.push_back(check("curl constraint rot A = -(|phi|^2 - mean)/2", curl, 1e-11));
  const DiagnosticRow& a = tr.rows.front();
  const DiagnosticRow& b = tr.rows.back();
  out.push_back(check("mass drift (relative)", a.mass > 0 ? std::abs(b.mass - a.mass) / a.mass : 0.0, 1e-8));
  out.push_back(check("energy drift (relative)",
                      a.energy != 0 ? std::abs(b.energy - a.energy) / std::abs(a.energy) : 0.0, 1e-6));
  return out;
}

ComplexField resample(const ComplexField& u, const GridPtr& target) {
  const Grid& src = u.grid();
  if (std::abs(src.length() - target->length()) > 1e-12 * src.length())
    throw GridMismatch();
  const SpectralField c = to_spectral(u);
  SpectralField out(target);
  const int m = std::min(src.n(), target->n()) / 2;
  auto slot = [](int j, int n) { return j >= 0 ? j : j + n; };
  // the shared Nyquist line is dropped so the map is the same in both directions
  for (int j1 = -m + 1; j1 < m; ++j1)
    for (int j2 = -m + 1; j2 < m; ++j2)
      out.coeffs()(slot(j1, target->n()), slot(j2, target->n())) = c.coeffs()(slot(j1, src.n()), slot(j2, src.n()));
  return to_physical(out);
}

ConvergenceReport convergence(const SimConfig& cfg, int levels) {
  cfg.validate();
  if (levels < 3) throw ConfigError("convergence needs at least 3 levels");
  ConvergenceReport rep;
  const GridPtr g = cfg.make_grid();
  const ComplexField phi0 = make_initial_data(cfg, g);
  EvolveOptions opt;
  opt.keep_snapshots = false;
  opt.record_rows = false;

  std::vector<std::future<ComplexField>> runs;
  for (int k = 0; k < levels; ++k) {
    StepperConfig sc = cfg.stepper_config();
    sc.dt = cfg.stepper.dt / std::ldexp(1.0, k);
    rep.dts.push_back(sc.dt);
    runs.push_back(std::async(std::launch::async, [&, sc] { return evolve(phi0, cfg.stepper.t_end, sc, opt).phi.back(); }));
  }
  std::vector<ComplexField> finals;
  for (auto& f : runs) finals.push_back(f.get());
  for (int k = 0; k + 1 < levels; ++k) rep.dt_errors.push_back((finals[k].values() - finals[k + 1].values()).abs().maxCoeff());
  for (std::size_t k = 0; k + 1 < rep.dt_errors.size(); ++k)
    rep.dt_orders.push_back(std::log2(rep.dt_errors[k] / rep.dt_errors[k + 1]));
  rep.dt_pass = !rep.dt_orders.empty() && rep.dt_orders.back() >= 1.8 && rep.dt_orders.back() <= 2.2;

  rep.ns = {32, 64};
  std::vector<std::future<ComplexField>> spatial;
  for (int n : {32, 64, 128}) {
    spatial.push_back(std::async(std::launch::async, [&, n] {
      const GridPtr gn = Grid::create(n, cfg.grid.length);
      return evolve(make_initial_data(cfg, gn), cfg.stepper.t_end, cfg.stepper_config(), opt).phi.back();
    }));
  }
  const ComplexField c32 = spatial[0].get(), c64 = spatial[1].get(), ref = spatial[2].get();
  for (const ComplexField* u : {&c32, &c64})
    rep.n_errors.push_back((resample(ref, u->grid_ptr()).values() - u->values()).abs().maxCoeff());
  rep.n_drop = rep.n_errors[0] / std::max(rep.n_errors[1], 1e-300);
  rep.n_pass = rep.n_drop >= 1e3;
  return rep;
}

}  // namespace css2d
