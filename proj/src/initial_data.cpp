#include "css2d/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "css2d/diagnostics.hpp"
#include "css2d/spectral.hpp"

namespace css2d {

namespace {

void require_commensurate(const Grid& g, double k, const char* which) {
  const double m = k / g.k0();
  if (std::abs(m - std::round(m)) > 1e-9 * std::max(1.0, std::abs(m)))
    throw ConfigError(std::string("wavevector component ") + which + " = " + std::to_string(k) +
                      " is not a multiple of 2 pi / L");
}

}  // namespace

ComplexField gaussian_data(const GridPtr& g, double a, double w, double x1, double x2, double k1, double k2) {
  require_commensurate(*g, k1, "k1");
  require_commensurate(*g, k2, "k2");
  return ComplexField::from_function(g, [&](double y1, double y2) {
    const double r2 = (y1 - x1) * (y1 - x1) + (y2 - x2) * (y2 - x2);
    return a * std::exp(-r2 / (w * w)) * std::exp(cplx(0.0, k1 * y1 + k2 * y2));
  });
}

ComplexField plane_wave_data(const GridPtr& g, double a, double k1, double k2) {
  require_commensurate(*g, k1, "k1");
  require_commensurate(*g, k2, "k2");
  return ComplexField::from_function(g, [&](double y1, double y2) { return a * std::exp(cplx(0.0, k1 * y1 + k2 * y2)); });
}

ComplexField random_hs_data(const GridPtr& g, double s, double slope, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const RArray& mask = g->dealias_mask();
  const RArray& xi = g->xi_abs();
  SpectralField c(g);
  // draw in a fixed order over every mode so the stream does not depend on the mask
  for (int p = 0; p < g->n(); ++p)
    for (int q = 0; q < g->n(); ++q) {
      const double th = phase(rng);
      if (mask(p, q) == 0.0) continue;
      c.coeffs()(p, q) = std::pow(1.0 + xi(p, q), -slope) * std::polar(1.0, th);
    }
  ComplexField u = to_physical(c);
  const double norm = hs_norm(u, s);
  if (radius == 0.0 || norm == 0.0) return ComplexField(g);
  return (radius / norm) * u;
}

ComplexField make_initial_data(const SimConfig& cfg, const GridPtr& g) {
  const auto& d = cfg.data;
  switch (d.kind) {
    case DataKind::Gaussian:
      return gaussian_data(g, d.amplitude, d.width, d.x1.value_or(0.5 * g->length()),
                           d.x2.value_or(0.5 * g->length()), d.k1, d.k2);
    case DataKind::PlaneWave:
      return plane_wave_data(g, d.amplitude, d.k1, d.k2);
    case DataKind::RandomHs:
      if (!d.seed) throw ConfigError("random_hs data needs a seed");
      return random_hs_data(g, cfg.physics.s, d.slope.value_or(cfg.physics.s + 1.0), d.radius, *d.seed);
  }
  throw ConfigError("unknown data kind");
}

ComplexField make_initial_data(const SimConfig& cfg) { return make_initial_data(cfg, cfg.make_grid()); }

}  // namespace css2d
