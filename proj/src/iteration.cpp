#include "css2d/iteration.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <limits>

#include "css2d/diagnostics.hpp"
#include "css2d/dyadic.hpp"
#include "css2d/spectral.hpp"

namespace css2d {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct Path {
  std::vector<ComplexField> phi;
  std::vector<GaugePotential> gauge;
};

double sup_distance(const std::vector<ComplexField>& a, const std::vector<ComplexField>& b, double s) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, hs_norm(a[k] - b[k], s));
  return d;
}

StepperConfig stepper_for(const PicardConfig& cfg, double dt, Mode mode) {
  StepperConfig sc = cfg.stepper;
  sc.dt = dt;
  sc.mode = mode;
  return sc;
}

// One lagged sweep: phi_{k+1} = S_k(phi_k + dt/2 F_k) + dt/2 F_{k+1}, F taken
// from the previous sweep and S_k the principal flow with the frozen form at
// the step midpoint.
std::vector<ComplexField> sweep(const ComplexField& phi0, const std::vector<ComplexField>& rhs,
                                const std::vector<RealVectorField>& frozen, const StepperConfig& sc) {
  const double dt = sc.dt;
  std::vector<ComplexField> out;
  out.reserve(rhs.size());
  out.push_back(phi0);
  for (std::size_t k = 0; k + 1 < rhs.size(); ++k) {
    const RealVectorField b_mid = 0.5 * (frozen[k] + frozen[k + 1]);
    ComplexField next = principal_step(out.back() + (0.5 * dt) * rhs[k], b_mid, dt, sc.cutoff_mu);
    next += (0.5 * dt) * rhs[k + 1];
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace

void PicardConfig::validate() const {
  if (!(s >= 1.0)) throw ConfigError("Picard regularity s must be at least 1");
  if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in (0, 1]");
  if (max_outer < 1 || max_sweeps < 1) throw ConfigError("iteration caps must be positive");
  if (!(tol_outer > 0.0) || !(inner_tolerance() > 0.0)) throw ConfigError("tolerances must be positive");
  if (!(radius > 0.0)) throw ConfigError("radius must be positive");
  if (t_end && !(*t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (!(stepper.dt > 0.0)) throw ConfigError("dt must be positive");
}

double existence_time(double m, const PicardConfig& cfg) {
  if (m < 0.0) throw ConfigError("existence_time needs M >= 0");
  return std::min(1.0, cfg.delta * std::pow(1.0 + m, -28.0));
}

double fitted_step(double t_end, double dt_target) {
  if (!(t_end > 0.0) || !(dt_target > 0.0)) throw ConfigError("t_end and dt must be positive");
  const double steps = std::max(1.0, std::ceil(t_end / dt_target - 1e-9));
  return t_end / steps;
}

PicardReport picard_run(const ComplexField& phi_in, const PicardConfig& cfg) {
  cfg.validate();
  cfg.stepper.validate(phi_in.grid());
  if (!phi_in.all_finite()) throw NonFiniteField("picard initial data");
  const ComplexField phi0 = dealias(phi_in);
  const double norm0 = hs_norm(phi0, cfg.s);

  PicardReport rep;
  rep.t_end = cfg.t_end.value_or(existence_time(norm0, cfg));
  rep.dt = fitted_step(rep.t_end, cfg.stepper.dt);
  const int steps = step_count(rep.t_end, rep.dt);
  const StepperConfig sc = stepper_for(cfg, rep.dt, Mode::Parasplit);
  const double ceiling = 1e3 * std::max(norm0, 1e-300);
  const double tol_inner = cfg.inner_tolerance();

  std::vector<double> times(steps + 1);
  for (int k = 0; k <= steps; ++k) times[k] = k * rep.dt;

  // phi^[0] guess is the free flow; A^[0] = 0
  Path prev;
  for (double t : times) prev.phi.push_back(linear_propagate(phi0, t));
  std::vector<RealVectorField> frozen(times.size(), RealVectorField(phi0.grid_ptr()));

  for (int n = 1; n <= cfg.max_outer; ++n) {
    PicardIterate it;
    it.n = n;
    Path cur;
    std::vector<ComplexField> guess = prev.phi;
    for (it.sweeps = 1;; ++it.sweeps) {
      std::vector<ComplexField> rhs;
      cur.gauge.clear();
      for (const auto& u : guess) {
        cur.gauge.push_back(slaved_gauge(u, sc));
        rhs.push_back(css_rhs(u, cur.gauge.back(), sc));
      }
      cur.phi = sweep(phi0, rhs, frozen, sc);
      for (std::size_t k = 0; k < cur.phi.size(); ++k) {
        const double h = hs_norm(cur.phi[k], cfg.s);
        if (h > ceiling) throw BlowupError(times[k], h, ceiling);
      }
      const double change = sup_distance(cur.phi, guess, cfg.s - 1.0);
      guess = cur.phi;
      if (change <= tol_inner) break;
      if (it.sweeps >= cfg.max_sweeps) {
        it.inner_converged = false;
        break;
      }
    }
    // the gauge of the accepted iterate, not of the last guess
    for (std::size_t k = 0; k < cur.phi.size(); ++k) cur.gauge[k] = slaved_gauge(cur.phi[k], sc);

    CertAccumulator acc;
    for (const auto& g : cur.gauge) {
      acc.add(g.ax, rep.dt);
      it.max_div = std::max(it.max_div, divergence_residual(g.ax));
    }
    it.cert = acc.cert();

    if (n > 1) {
      PicardIterate& last = rep.iterations.back();
      last.d = sup_distance(cur.phi, prev.phi, cfg.s - 1.0);
      if (rep.iterations.size() >= 2) {
        PicardIterate& before = rep.iterations[rep.iterations.size() - 2];
        before.ratio = before.d > 10.0 * tol_inner ? last.d / before.d : nan;
        if (before.n >= 2 && std::isfinite(before.ratio)) {
          ++rep.measured_ratios;
          if (before.ratio > 0.5) rep.all_ratios_le_half = false;
        }
      }
    }
    it.d = nan;
    it.ratio = nan;
    rep.iterations.push_back(it);

    for (std::size_t k = 0; k < cur.gauge.size(); ++k) frozen[k] = cur.gauge[k].ax;
    prev = std::move(cur);
    if (n > 1 && rep.iterations[rep.iterations.size() - 2].d <= cfg.tol_outer) {
      rep.converged = true;
      break;
    }
  }

  Trajectory& tr = rep.final;
  tr.dt = rep.dt;
  tr.s = cfg.s;
  tr.kappa = cfg.stepper.kappa;
  tr.times = times;
  tr.phi = std::move(prev.phi);
  tr.gauge = std::move(prev.gauge);
  CertAccumulator acc;
  for (const auto& g : tr.gauge) acc.add(g.ax, rep.dt);
  tr.cert = acc.cert();
  if (!rep.converged) tr.warnings.push_back("Picard iteration did not reach tol_outer");
  return rep;
}

void PicardReport::write_csv(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "n,d_n,r_n,sweeps,inner_converged,cert_sup,cert_grad_l1linf,div_res\n";
  char buf[512];
  for (const auto& it : iterations) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%d,%d,%.17g,%.17g,%.17g\n", it.n, it.d, it.ratio, it.sweeps,
                  it.inner_converged ? 1 : 0, it.cert.sup_norm, it.cert.grad_l1linf, it.max_div);
    out << buf;
  }
}

LipschitzProbe weak_lipschitz_probe(const ComplexField& phi_in, const ComplexField& phi_in2, double t_end,
                                    const PicardConfig& cfg) {
  cfg.validate();
  phi_in.require_same_grid(phi_in2);
  for (const ComplexField* u : {&phi_in, &phi_in2})
    if (hs_norm(dealias(*u), cfg.s) > cfg.radius)
      throw ConfigError("probe data lies outside the H^s ball of radius " + std::to_string(cfg.radius));
  LipschitzProbe out;
  const double denom = hs_norm(dealias(phi_in) - dealias(phi_in2), cfg.s - 1.0);
  if (denom == 0.0) {
    out.degenerate = true;
    return out;
  }
  const StepperConfig sc = stepper_for(cfg, fitted_step(t_end, cfg.stepper.dt), Mode::Direct);
  EvolveOptions opt;
  opt.record_rows = false;
  auto other = std::async(std::launch::async, [&] { return evolve(phi_in2, t_end, sc, opt); });
  const Trajectory a = evolve(phi_in, t_end, sc, opt);
  const Trajectory b = other.get();
  out.ratio = sup_distance(a.phi, b.phi, cfg.s - 1.0) / denom;
  return out;
}

double norm_growth_probe(const ComplexField& phi_in, const PicardConfig& cfg) {
  cfg.validate();
  const ComplexField phi0 = dealias(phi_in);
  const double norm0 = hs_norm(phi0, cfg.s);
  if (norm0 == 0.0) return 1.0;
  const double t_end = cfg.t_end.value_or(existence_time(norm0, cfg));
  const StepperConfig sc = stepper_for(cfg, fitted_step(t_end, cfg.stepper.dt), cfg.stepper.mode);
  EvolveOptions opt;
  opt.record_rows = false;
  const Trajectory tr = evolve(phi0, t_end, sc, opt);
  double sup = 0.0;
  for (const auto& u : tr.phi) sup = std::max(sup, hs_norm(u, cfg.s));
  return sup / norm0;
}

}  // namespace css2d
