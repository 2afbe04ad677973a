#include <doctest.h>

#include <numbers>

#include "css2d/diagnostics.hpp"
#include "css2d/dyadic.hpp"
#include "css2d/evolution.hpp"
#include "css2d/paradiff.hpp"
#include "css2d/spectral.hpp"
#include "helpers.hpp"

using namespace css2d;
using testing::max_abs_diff;
using testing::random_field;

namespace {
constexpr double pi = std::numbers::pi;

ComplexField gaussian(const GridPtr& g, double a, double w, double k1, double k2 = 0.0) {
  const double c = 0.5 * g->length();
  return ComplexField::from_function(g, [&](double x1, double x2) {
    const double r2 = (x1 - c) * (x1 - c) + (x2 - c) * (x2 - c);
    return a * std::exp(-r2 / (w * w)) * std::exp(cplx(0, k1 * x1 + k2 * x2));
  });
}

double sup_diff(const Trajectory& a, const Trajectory& b) { return max_abs_diff(a.phi.back(), b.phi.back()); }
}  // namespace

TEST_CASE("free propagator") {
  auto g = Grid::create(32, 2 * pi);
  const ComplexField u = random_field(g, 1, 16);
  CHECK(max_abs_diff(linear_propagate(u, 0.0), u) < 1e-15);
  const ComplexField mode = ComplexField::from_function(g, [](double x1, double x2) { return std::exp(cplx(0, 2 * x1 - 3 * x2)); });
  CHECK(max_abs_diff(linear_propagate(mode, 0.3), std::exp(cplx(0, -0.3 * 13)) * mode) < 1e-13);
  CHECK(std::abs(l2_norm(linear_propagate(u, 1.7)) - l2_norm(u)) <= 1e-13 * l2_norm(u));
}

TEST_CASE("principal step") {
  auto g = Grid::create(64, 2 * pi);
  const ComplexField u = random_field(g, 2, 21, 1.0);
  SUBCASE("zero form reduces to the free flow") {
    CHECK(max_abs_diff(principal_step(u, RealVectorField(g), 0.01), linear_propagate(u, 0.01)) < 1e-14);
  }
  SUBCASE("non-solenoidal form is rejected") {
    const RealVectorField grad(RealField::from_function(g, [](double x, double) { return std::sin(x); }), RealField(g));
    CHECK_THROWS_AS(principal_step(u, grad, 0.01), Error);
  }
  SUBCASE("L2 norm is conserved") {
    const RealVectorField b = testing::random_divfree(g, 3, 4);
    ComplexField v = u;
    for (int k = 0; k < 100; ++k) v = principal_step(v, b, 0.01);
    CHECK(std::abs(l2_norm(v) - l2_norm(u)) <= 1e-10 * l2_norm(u));
    CHECK(max_abs_diff(v, linear_propagate(u, 1.0)) > 1e-3);
  }
  SUBCASE("spectral cutoff") {
    const RealVectorField b = testing::random_divfree(g, 4, 4);
    const ComplexField full = principal_step(u, b, 0.01);
    const ComplexField cut = principal_step(u, b, 0.01, 32.0);
    CHECK(max_abs_diff(full, cut) > 0.0);
    CHECK(max_abs_diff(principal_step(u, b, 0.01, 64.0), full) < 1e-14);
    StepperConfig cfg;
    cfg.cutoff_mu = 3.0;
    CHECK_THROWS_AS(cfg.validate(*g), ConfigError);
  }
}

TEST_CASE("right-hand side") {
  auto g = Grid::create(64, 2 * pi);
  StepperConfig cfg;
  CHECK(linf_norm(css_rhs(ComplexField(g), cfg)) == 0.0);

  const ComplexField phi = 0.5 * random_field(g, 5, 21, 1.5);
  cfg.gauge_coupling = false;
  cfg.kappa = 0.7;
  CHECK(max_abs_diff(css_rhs(phi, cfg), cplx(0, -0.7) * product(charge_density(phi), phi)) < 1e-15);

  cfg.gauge_coupling = true;
  const ComplexField direct = css_rhs(phi, cfg);
  cfg.mode = Mode::Parasplit;
  const ComplexField split = css_rhs(phi, cfg);
  const ComplexField p = frak_p(compute_ax(phi), phi);
  CHECK(linf_norm(p) > 1e-6 * linf_norm(direct));
  CHECK(max_abs_diff(direct, split - p) <= 1e-11 * linf_norm(direct));
}

TEST_CASE("linear Schroedinger against the exact multiplier") {
  auto g = Grid::create(64, 2 * pi * 8);
  const ComplexField phi0 = gaussian(g, 1.0, 4.0, 0.5);
  StepperConfig cfg;
  cfg.kappa = 0.0;
  cfg.gauge_coupling = false;
  cfg.dt = 0.05;
  const Trajectory tr = evolve(phi0, 1.0, cfg);
  CHECK(max_abs_diff(tr.phi.back(), linear_propagate(dealias(phi0), 1.0)) <= 1e-10);
  CHECK(tr.times.size() == 21);
  for (std::size_t k = 1; k < tr.times.size(); ++k) CHECK(tr.times[k] > tr.times[k - 1]);
}

TEST_CASE("cubic NLS plane wave") {
  auto g = Grid::create(32, 2 * pi * 8);
  const double a = 0.6, k1 = 3 * g->k0(), k2 = -2 * g->k0();
  const ComplexField phi0 = ComplexField::from_function(g, [&](double x1, double x2) {
    return a * std::exp(cplx(0, k1 * x1 + k2 * x2));
  });
  StepperConfig cfg;
  cfg.gauge_coupling = false;
  cfg.kappa = 1.0;
  cfg.dt = 0.01;
  const Trajectory tr = evolve(phi0, 1.0, cfg, {.stride = 100});
  const double omega = k1 * k1 + k2 * k2 + cfg.kappa * a * a;
  CHECK(max_abs_diff(tr.phi.back(), std::exp(cplx(0, -omega)) * phi0) <= 1e-5);
}

TEST_CASE("evolve bookkeeping") {
  auto g = Grid::create(32, 2 * pi * 8);
  const ComplexField phi0 = gaussian(g, 0.3, 6.0, 0.5);
  StepperConfig cfg;
  cfg.dt = 0.01;
  const Trajectory tr = evolve(phi0, 0.1, cfg, {.stride = 5});
  CHECK(tr.rows.size() == 11);
  CHECK(tr.times.size() == 3);
  CHECK(tr.times.back() == doctest::Approx(0.1));
  CHECK(tr.phi.size() == tr.gauge.size());
  CHECK(tr.cert.grad_l1linf > 0.0);
  CHECK(tr.cert.sup_norm > 0.0);
  CHECK_THROWS_AS(evolve(phi0, 0.105, cfg), ConfigError);
  CHECK_THROWS_AS(evolve(phi0, 0.1, cfg, {.stride = 0}), ConfigError);
  CHECK_THROWS_AS(evolve(phi0, 0.1, cfg, {.blowup_ceiling = 0.1 * h1_norm(phi0)}), BlowupError);

  ComplexField bad = phi0;
  bad(0, 0) = NAN;
  CHECK_THROWS_AS(evolve(bad, 0.1, cfg), NonFiniteField);
}

TEST_CASE("certificate of a run matches a fine-step recomputation") {
  auto g = Grid::create(32, 2 * pi * 8);
  const ComplexField phi0 = gaussian(g, 1.0, 4.0, 0.5);
  StepperConfig cfg;
  cfg.dt = 0.02;
  const Trajectory coarse = evolve(phi0, 1.0, cfg);
  cfg.dt = 0.002;
  const Trajectory fine = evolve(phi0, 1.0, cfg, {.keep_snapshots = false});
  CHECK(std::abs(coarse.cert.grad_l1linf - fine.cert.grad_l1linf) <= 0.01 * fine.cert.grad_l1linf);
}

TEST_CASE("full system self-convergence in dt") {
  auto g = Grid::create(64, 2 * pi * 8);
  const ComplexField phi0 = gaussian(g, 1.0, 4.0, 0.5);
  StepperConfig cfg;
  std::vector<Trajectory> runs;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    cfg.dt = dt;
    runs.push_back(evolve(phi0, 0.2, cfg, {.keep_snapshots = false, .record_rows = false}));
  }
  const double e1 = sup_diff(runs[0], runs[1]), e2 = sup_diff(runs[1], runs[2]);
  MESSAGE("self-convergence order " << testing::slope(e1, e2));
  CHECK(testing::slope(e1, e2) >= 2.0 - 0.05);
}

TEST_CASE("direct and parasplit agree to second order") {
  auto g = Grid::create(128, 2 * pi);
  const ComplexField phi0 = gaussian(g, 1.0, 1.0, 20.0);
  StepperConfig cfg;
  std::vector<double> gaps;
  for (double dt : {0.01, 0.005, 0.0025}) {
    cfg.dt = dt;
    cfg.mode = Mode::Direct;
    const Trajectory d = evolve(phi0, 0.2, cfg, {.keep_snapshots = false, .record_rows = false});
    cfg.mode = Mode::Parasplit;
    const Trajectory p = evolve(phi0, 0.2, cfg, {.keep_snapshots = false, .record_rows = false});
    gaps.push_back(sup_diff(d, p));
  }
  MESSAGE("direct/parasplit gaps " << gaps[0] << " " << gaps[1] << " " << gaps[2]);
  CHECK(gaps[0] > 0.0);
  CHECK(gaps[1] < gaps[0]);
  // the coarsest pair is still pre-asymptotic
  CHECK(testing::slope(gaps[1], gaps[2]) >= 1.9);
}
