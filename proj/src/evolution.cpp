#include "css2d/evolution.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>

#include "css2d/diagnostics.hpp"
#include "css2d/dyadic.hpp"
#include "css2d/paradiff.hpp"
#include "css2d/snapshot.hpp"
#include "css2d/spectral.hpp"

namespace css2d {

namespace {

const cplx I(0.0, 1.0);

template <typename F>
ComplexField rk4(const ComplexField& u, double h, F&& f) {
  const ComplexField k1 = f(u);
  const ComplexField k2 = f(u + (0.5 * h) * k1);
  const ComplexField k3 = f(u + (0.5 * h) * k2);
  const ComplexField k4 = f(u + h * k3);
  return u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void require_finite(const ComplexField& u, const char* where) {
  if (!u.all_finite()) throw NonFiniteField(where);
}

}  // namespace

Mode parse_mode(const std::string& s) {
  if (s == "direct") return Mode::Direct;
  if (s == "parasplit") return Mode::Parasplit;
  throw ConfigError("unknown stepper mode '" + s + "'");
}

std::string to_string(Mode m) { return m == Mode::Direct ? "direct" : "parasplit"; }

void StepperConfig::validate(const Grid& grid) const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!std::isfinite(kappa)) throw ConfigError("kappa must be finite");
  if (cutoff_mu) {
    const double mu = *cutoff_mu;
    const double l = std::log2(mu);
    if (!(mu >= 1.0) || l != std::round(l) || mu > grid.lambda_max())
      throw ConfigError("cutoff_mu must be a dyadic frequency on the ladder");
  }
}

ComplexField linear_propagate(const ComplexField& u, double tau) {
  const CArray phase = (-I * tau * u.grid().xi_sq().cast<cplx>()).exp();
  return apply_symbol(u, phase);
}

ComplexField principal_step(const ComplexField& u, const RealVectorField& b, double dt,
                            std::optional<double> cutoff_mu) {
  const double div = divergence_residual(b);
  if (div > 1e-10 * std::max(1.0, linf_norm(b)))
    throw Error("principal form is not divergence free (residual " + std::to_string(div) + ")");
  ComplexField v = linear_propagate(u, 0.5 * dt);
  if (linf_norm(b) > 0.0) {
    RArray chi;
    if (cutoff_mu) chi = (u.grid().xi_abs() <= *cutoff_mu).cast<double>();
    auto flow = [&](const ComplexField& w) {
      ComplexField r = -frak_p(b, w);
      return cutoff_mu ? apply_symbol(r, chi) : r;
    };
    v = rk4(v, dt, flow);
  }
  v = linear_propagate(v, 0.5 * dt);
  require_finite(v, "principal_step");
  return v;
}

ComplexField principal_step(const ComplexField& u, const RealVectorField& b, const StepperConfig& cfg) {
  return principal_step(u, b, cfg.dt, cfg.cutoff_mu);
}

GaugePotential slaved_gauge(const ComplexField& phi, const StepperConfig& cfg) {
  if (cfg.gauge_coupling) return compute_gauge(phi);
  GaugePotential g;
  g.ax = RealVectorField(phi.grid_ptr());
  g.a0 = RealField(phi.grid_ptr());
  g.mean_charge = phi.values().abs2().mean();
  return g;
}

ComplexField css_rhs(const ComplexField& phi, const GaugePotential& gauge, const StepperConfig& cfg) {
  const ComplexField rho = charge_density(phi);
  ComplexField out = (-I * cfg.kappa) * product(rho, phi);
  if (cfg.gauge_coupling) {
    const ComplexVectorField a = to_complex(gauge.ax);
    if (cfg.mode == Mode::Direct)
      out -= 2.0 * dot_product(a, gradient(phi));
    else
      out -= frak_q(gauge.ax, phi);
    out -= I * product(to_complex(gauge.a0), phi);
    out -= I * product(dot_product(a, a), phi);
  }
  require_finite(out, "css_rhs");
  return out;
}

ComplexField css_rhs(const ComplexField& phi, const StepperConfig& cfg) {
  return css_rhs(phi, slaved_gauge(phi, cfg), cfg);
}

int step_count(double t_end, double dt) {
  if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
  const double r = t_end / dt;
  const long steps = std::lround(r);
  if (steps < 1 || std::abs(r - steps) > 1e-9 * r) throw ConfigError("dt must divide t_end");
  return static_cast<int>(steps);
}

void write_metrics_csv(const std::filesystem::path& path, const std::vector<DiagnosticRow>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "t,mass,energy,h1,hs,div_res,curl_res,cert_grad_l1linf,cert_sup\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.mass,
                  r.energy, r.h1, r.hs, r.div_res, r.curl_res, r.cert_grad_l1linf, r.cert_sup);
    out << buf;
  }
}

void Trajectory::write_csv(const std::filesystem::path& path) const { write_metrics_csv(path, rows); }

void Trajectory::write_snapshots(const std::filesystem::path& dir) const {
  for (std::size_t k = 0; k < phi.size(); ++k) {
    char idx[16];
    std::snprintf(idx, sizeof idx, "%04zu", k);
    write_snapshot(dir / ("phi_" + std::string(idx)), phi[k], times[k], "phi");
    write_snapshot(dir / ("ax1_" + std::string(idx)), gauge[k].ax.c1, times[k], "ax1");
    write_snapshot(dir / ("ax2_" + std::string(idx)), gauge[k].ax.c2, times[k], "ax2");
    write_snapshot(dir / ("a0_" + std::string(idx)), gauge[k].a0, times[k], "a0");
  }
}

Trajectory evolve(const ComplexField& phi0, double t_end, const StepperConfig& cfg, const EvolveOptions& opt) {
  cfg.validate(phi0.grid());
  if (opt.stride < 1) throw ConfigError("snapshot stride must be at least 1");
  require_finite(phi0, "initial data");
  const int steps = step_count(t_end, cfg.dt);
  const double dt = cfg.dt;

  Trajectory traj;
  traj.dt = dt;
  traj.stride = opt.stride;
  traj.s = opt.s;
  traj.kappa = cfg.kappa;

  ComplexField phi = dealias(phi0);
  GaugePotential gauge = slaved_gauge(phi, cfg);
  const double ceiling = opt.blowup_ceiling.value_or(opt.blowup_factor * h1_norm(phi));
  CertAccumulator cert;
  cert.add(gauge.ax, dt);
  bool warned = false;

  auto record = [&](int step) {
    const double t = step * dt;
    const double h1 = h1_norm(phi);
    if (h1 > ceiling) throw BlowupError(t, h1, ceiling);
    if (!warned && !cert.cert().satisfies_gradient_bound()) {
      traj.warnings.push_back("integral of ||grad A_x||_inf exceeded 1 at t=" + std::to_string(t));
      warned = true;
    }
    if (opt.record_rows) {
      const AdmissibleFormCert& c = cert.cert();
      traj.rows.push_back({t, mass(phi), energy(phi, gauge.ax, cfg.kappa), h1, hs_norm(phi, opt.s),
                           divergence_residual(gauge.ax), cfg.gauge_coupling ? curl_residual(gauge.ax, phi) : 0.0,
                           c.grad_l1linf, c.sup_norm});
    }
    if (step == 0 || (opt.keep_snapshots && step % opt.stride == 0)) {
      traj.times.push_back(t);
      traj.phi.push_back(phi);
      traj.gauge.push_back(gauge);
    }
  };
  record(0);

  RealVectorField ax_prev = gauge.ax;
  const StepperConfig half{0.5 * dt, cfg.scheme, cfg.cutoff_mu, cfg.kappa, cfg.mode, cfg.gauge_coupling};
  for (int step = 1; step <= steps; ++step) {
    if (cfg.mode == Mode::Direct || !cfg.gauge_coupling) {
      phi = linear_propagate(phi, 0.5 * dt);
      phi = rk4(phi, dt, [&](const ComplexField& u) { return css_rhs(u, cfg); });
      phi = linear_propagate(phi, 0.5 * dt);
    } else {
      // principal form at the step midpoint, extrapolated from the last two levels
      const RealVectorField b_mid = 1.5 * gauge.ax - 0.5 * ax_prev;
      ax_prev = gauge.ax;
      phi = principal_step(phi, b_mid, half);
      phi = rk4(phi, dt, [&](const ComplexField& u) { return css_rhs(u, cfg); });
      phi = principal_step(phi, b_mid, half);
    }
    require_finite(phi, "evolve");
    gauge = slaved_gauge(phi, cfg);
    cert.add(gauge.ax, dt);
    record(step);
  }
  if (!opt.keep_snapshots || steps % opt.stride != 0) {
    traj.times.push_back(steps * dt);
    traj.phi.push_back(phi);
    traj.gauge.push_back(gauge);
  }
  traj.cert = cert.cert();
  return traj;
}

}  // namespace css2d
