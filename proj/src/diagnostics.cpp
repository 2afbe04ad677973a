#include "css2d/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "css2d/dyadic.hpp"
#include "css2d/spectral.hpp"

namespace css2d {

namespace {

const cplx I(0.0, 1.0);

double integral(const RArray& density, const Grid& g) { return density.sum() * g.cell_area(); }

ComplexField real_scalar_times(const RealField& a, const ComplexField& u) { return product(to_complex(a), u); }

}  // namespace

double mass(const ComplexField& phi) { return 0.5 * integral(phi.values().abs2(), phi.grid()); }

ComplexVectorField covariant_grad(const ComplexField& phi, const RealVectorField& a) {
  ComplexVectorField d = gradient(phi);
  d.c1 += I * real_scalar_times(a.c1, phi);
  d.c2 += I * real_scalar_times(a.c2, phi);
  return d;
}

double energy(const ComplexField& phi, const RealVectorField& a, double kappa) {
  const ComplexVectorField d = covariant_grad(phi, a);
  const RArray rho = charge_density(phi).values().real();
  const RArray density = 0.5 * (d.c1.values().abs2() + d.c2.values().abs2()) + 0.25 * kappa * rho.square();
  return integral(density, phi.grid());
}

double energy(const ComplexField& phi, double kappa) { return energy(phi, compute_ax(phi), kappa); }

double h1_norm(const ComplexField& phi) { return sobolev_norm(phi, 1.0); }

double hs_norm(const ComplexField& phi, double s) { return sobolev_norm(phi, s); }

double strichartz_accumulate(const Trajectory& traj, double q, double r) {
  if (!std::isfinite(r)) throw ConfigError("Strichartz pair needs r < infinity");
  if (!(q >= 2.0) || !(r >= 2.0) || std::abs(2.0 / q + 2.0 / r - 1.0) > 1e-12)
    throw ConfigError("(q, r) is not a Strichartz pair: 2/q + 2/r must equal 1");
  if (traj.phi.size() < 2) throw ConfigError("Strichartz norm needs at least two snapshots");
  double acc = 0.0;
  double prev = std::pow(lp_norm(traj.phi[0], r), q);
  for (std::size_t k = 1; k < traj.phi.size(); ++k) {
    const double cur = std::pow(lp_norm(traj.phi[k], r), q);
    acc += 0.5 * (traj.times[k] - traj.times[k - 1]) * (prev + cur);
    prev = cur;
  }
  return std::pow(acc, 1.0 / q);
}

CovariantResidual covariant_residual(const Trajectory& traj) {
  const std::size_t m = traj.phi.size();
  if (m < 3 || traj.gauge.size() != m) throw ConfigError("covariant residual needs at least three snapshots");
  CovariantResidual out;
  for (std::size_t k = 0; k < m; ++k) out.res2 = std::max(out.res2, curl_residual(traj.gauge[k].ax, traj.phi[k]));

  for (std::size_t k = 1; k + 1 < m; ++k) {
    const double h2 = traj.times[k + 1] - traj.times[k - 1];
    const ComplexField& phi = traj.phi[k];
    const GaugePotential& g = traj.gauge[k];
    const ComplexField phi_t = (1.0 / h2) * (traj.phi[k + 1] - traj.phi[k - 1]);

    const ComplexVectorField d = covariant_grad(phi, g.ax);
    const ComplexField dd = derivative(d.c1, Axis::One) + derivative(d.c2, Axis::Two) +
                            I * (real_scalar_times(g.ax.c1, d.c1) + real_scalar_times(g.ax.c2, d.c2));
    const ComplexField r1 = phi_t + I * real_scalar_times(g.a0, phi) - I * dd +
                            (I * traj.kappa) * product(charge_density(phi), phi);
    out.res1 = std::max(out.res1, linf_norm(r1));

    const ComplexField a0 = to_complex(g.a0);
    const ComplexField j1 = product(conj(phi), d.c1), j2 = product(conj(phi), d.c2);
    auto component = [&](const RealField& next, const RealField& prev, Axis axis, const ComplexField& cross,
                         double sign) {
      RArray r = (next.values() - prev.values()) / h2 - derivative(a0, axis).values().real() +
                 sign * cross.values().imag();
      r -= r.mean();
      return r.abs().maxCoeff();
    };
    const GaugePotential& gn = traj.gauge[k + 1];
    const GaugePotential& gp = traj.gauge[k - 1];
    out.res3 = std::max({out.res3, component(gn.ax.c1, gp.ax.c1, Axis::One, j2, 1.0),
                         component(gn.ax.c2, gp.ax.c2, Axis::Two, j1, -1.0)});
  }
  return out;
}

double energy_space_bound(double mass0, double energy0, double kappa, const EnergyBound& cfg) {
  if (mass0 < 0.0) throw ConfigError("mass must be nonnegative");
  double e = energy0;
  if (kappa <= 0.0) {
    if (mass0 > cfg.small_mass)
      throw ConfigError("energy-space bound unavailable: kappa <= 0 needs mass below " +
                        std::to_string(cfg.small_mass));
    e = std::abs(energy0);
  } else if (energy0 < 0.0) {
    throw ConfigError("energy must be nonnegative for kappa > 0");
  }
  return cfg.constant * std::sqrt(mass0 + e + mass0 * e);
}

double calibrate_energy_bound(const std::vector<ComplexField>& family, double kappa) {
  double c = 0.0;
  for (const auto& phi : family) {
    const double m = mass(phi);
    const double e = std::abs(energy(phi, kappa));
    const double base = std::sqrt(m + e + m * e);
    if (base > 0.0) c = std::max(c, h1_norm(phi) / base);
  }
  return c;
}

}  // namespace css2d
