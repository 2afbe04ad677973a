#include <doctest.h>

#include <numbers>

#include "css2d/dyadic.hpp"
#include "css2d/spectral.hpp"
#include "helpers.hpp"

using namespace css2d;
using testing::max_abs_diff;
using testing::random_field;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("standard bump profile") {
  const StandardBump phi1 = make_standard_phi1();
  CHECK(phi1(0.0) == 1.0);
  CHECK(phi1(0.5) == 1.0);
  CHECK(phi1(2.0) == 0.0);
  CHECK(phi1(1.5) == doctest::Approx(0.5).epsilon(1e-15));
  double prev = 1.0;
  for (double r = 0.0; r <= 2.5; r += 0.01) {
    CHECK(phi1(r) <= prev);
    prev = phi1(r);
  }
}

TEST_CASE("partition of unity and support") {
  for (int n : {16, 64, 128}) {
    auto g = Grid::create(n, 2 * pi * 8);
    const DyadicLadder ladder(g);
    RArray sum = RArray::Zero(n, n);
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      const RArray& b = ladder.band_multiplier_at(k);
      CHECK(b.minCoeff() >= 0.0);
      CHECK(b.maxCoeff() <= 1.0);
      sum += b;
      const double lambda = ladder.bands()[k];
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          const double r = g->xi_abs()(p, q);
          if (b(p, q) != 0.0) {
            CHECK(r <= 2 * lambda);
            if (lambda >= 2) CHECK(r >= lambda / 2);
          }
        }
    }
    CHECK((sum - 1.0).abs().maxCoeff() <= 1e-14);
    for (double lambda : ladder.bands())
      CHECK((ladder.leq_multiplier(lambda) - ladder.cumulative_multiplier(lambda)).abs().maxCoeff() <= 1e-15);
    CHECK((ladder.leq_multiplier(ladder.bands().back()) - 1.0).abs().maxCoeff() == 0.0);
  }
}

TEST_CASE("band projections") {
  auto g = Grid::create(32, 2 * pi);
  const DyadicLadder ladder(g);
  const ComplexField mode = ComplexField::from_function(g, [](double x, double) { return std::exp(cplx(0, 3 * x)); });
  const double f4 = make_standard_phi1()(3.0 / 4.0) - make_standard_phi1()(6.0 / 4.0);
  CHECK(max_abs_diff(band_project(ladder, mode, 4), f4 * mode) < 1e-14);
  CHECK(f4 > 0.0);
  CHECK(f4 < 1.0);
  CHECK(linf_norm(band_project(ladder, mode, 16)) < 1e-15);
  CHECK(linf_norm(project_leq(ladder, mode, 1)) < 1e-15);
  CHECK_THROWS_AS(band_project(ladder, mode, 3), ConfigError);

  const ComplexField one = ComplexField::from_function(g, [](double, double) { return cplx(1.0); });
  CHECK(max_abs_diff(band_project(ladder, one, 1), one) < 1e-15);
  for (double lambda : ladder.bands())
    if (lambda > 1) CHECK(linf_norm(band_project(ladder, one, lambda)) < 1e-15);
  CHECK(linf_norm(project_lt(ladder, one, 1)) == 0.0);

  const ComplexField u = random_field(g, 4, 16);
  ComplexField sum(g);
  for (double lambda : ladder.bands()) sum += band_project(ladder, u, lambda);
  CHECK(max_abs_diff(sum, u) < 1e-12);
  CHECK(max_abs_diff(project_leq(ladder, u, ladder.bands().back()), u) < 1e-13);
}

TEST_CASE("Sobolev norms") {
  auto g = Grid::create(64, 2 * pi * 8);
  const DyadicLadder ladder(g);
  ComplexField zero(g);
  CHECK(sobolev_norm(ladder, zero, 1.0) == 0.0);

  // |xi| = k0 <= 1: only the first band sees it, with weight 1
  const ComplexField mode = ComplexField::from_function(g, [&](double x, double) {
    return std::exp(cplx(0, g->k0() * x));
  });
  CHECK(sobolev_norm(ladder, mode, 1.0) == doctest::Approx(l2_norm(mode)).epsilon(1e-13));
  CHECK(sobolev_norm(ladder, mode, SobolevWeight::power(ladder, 1.0)) ==
        doctest::Approx(l2_norm(mode)).epsilon(1e-13));

  // frame bounds of the smooth partition: sum ||P_l u||^2 in [c, 1] ||u||^2
  double c_min = 1.0;
  for (unsigned seed = 0; seed < 10; ++seed) {
    const ComplexField u = random_field(g, seed, 32);
    const double r = std::pow(sobolev_norm(ladder, u, 0.0) / l2_norm(u), 2);
    CHECK(r <= 1.0 + 1e-12);
    c_min = std::min(c_min, r);
  }
  MESSAGE("measured frame constant c = " << c_min);
  CHECK(c_min >= 0.5);

  // homogeneity
  const ComplexField u = random_field(g, 99, 20);
  const cplx c(-0.7, 2.1);
  CHECK(sobolev_norm(ladder, c * u, 1.5) == doctest::Approx(std::abs(c) * sobolev_norm(ladder, u, 1.5)).epsilon(1e-13));
}

TEST_CASE("norm equivalence with the classical H^s norm is grid stable") {
  auto ratio_range = [](int n) {
    auto g = Grid::create(n, 2 * pi * 4);
    const DyadicLadder ladder(g);
    double lo = INFINITY, hi = 0.0;
    for (unsigned seed = 0; seed < 6; ++seed) {
      const ComplexField u = random_field(g, seed, n / 3, 1.0);
      const SpectralField s = to_spectral(u);
      const double classical =
          std::sqrt(((1.0 + g->xi_sq()) * s.coeffs().abs2()).sum()) / g->length();
      const double r = sobolev_norm(ladder, u, 1.0) / classical;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return std::pair{lo, hi};
  };
  const auto [lo32, hi32] = ratio_range(32);
  const auto [lo128, hi128] = ratio_range(128);
  CHECK(lo32 > 0.25);
  CHECK(lo128 > 0.25);
  CHECK(hi32 < 4.0);
  CHECK(hi128 < 4.0);
}

TEST_CASE("weight characteristics") {
  auto g = Grid::create(64, 2 * pi);
  const DyadicLadder ladder(g);
  const auto pw = weight_char(SobolevWeight::power(ladder, 1.5));
  CHECK(pw.m_star == doctest::Approx(1.5));
  CHECK(pw.m_upper == doctest::Approx(1.5));
  CHECK(pw.m_char == doctest::Approx(1.5));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ud(0.1, 5.0);
  std::vector<double> bands{1, 2, 4, 8, 16}, vals;
  for (int k = 0; k < 5; ++k) vals.push_back(ud(rng));
  const SobolevWeight m(bands, vals);
  double lo = INFINITY, hi = -INFINITY;
  for (int k = 0; k < 4; ++k) {
    const double r = std::log(vals[k + 1] / vals[k]) / std::log(2.0);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const auto wc = weight_char(m);
  CHECK(wc.m_star == doctest::Approx(lo));
  CHECK(wc.m_upper == doctest::Approx(hi));
  CHECK(wc.m_char == doctest::Approx(std::max(-lo, hi)));
  CHECK_THROWS_AS(weight_char(SobolevWeight({1.0}, {1.0})), ConfigError);
  CHECK_THROWS_AS(SobolevWeight({1.0, 2.0}, {1.0, -2.0}), ConfigError);

  // m(lambda) <= 2^{k [m]} m(mu) whenever |log2(lambda/mu)| <= k
  for (std::size_t a = 0; a < bands.size(); ++a)
    for (std::size_t b = 0; b < bands.size(); ++b) {
      const double k = std::abs(std::log2(bands[a] / bands[b]));
      CHECK(vals[a] <= std::exp2(k * wc.m_char) * vals[b] * (1 + 1e-14));
    }
}

TEST_CASE("weight table round trip") {
  auto g = Grid::create(32, 2 * pi);
  const DyadicLadder ladder(g);
  const SobolevWeight m = SobolevWeight::power(ladder, 1.25);
  const auto path = std::filesystem::temp_directory_path() / "css2d_weight.txt";
  m.write_table(path);
  const SobolevWeight r = SobolevWeight::read_table(path);
  CHECK(r.bands() == m.bands());
  CHECK(r.values() == m.values());
  std::filesystem::remove(path);
}

TEST_CASE("compactness weight") {
  auto g = Grid::create(64, 2 * pi);
  const DyadicLadder ladder(g);
  const double s = 1.0;

  SUBCASE("single low mode") {
    const ComplexField mode = ComplexField::from_function(g, [](double x, double) { return std::exp(cplx(0, 3 * x)); });
    const SobolevWeight m = build_compactness_weight(ladder, {mode}, s);
    CHECK(m(1) == 1.0);
    CHECK(sobolev_norm(ladder, mode, m) <= 2.0 * sobolev_norm(ladder, mode, s));
    // after the mode's support every band crosses a new threshold
    const auto& v = m.values();
    for (std::size_t k = 4; k + 1 < v.size(); ++k)
      CHECK(v[k + 1] / v[k] == doctest::Approx(std::exp2(s + 0.125)));
  }

  SUBCASE("power-law family against a brute-force tail oracle") {
    std::vector<ComplexField> family;
    for (unsigned seed = 0; seed < 3; ++seed) family.push_back(random_field(g, seed, 21, s + 1.0));
    const SobolevWeight m = build_compactness_weight(ladder, family, s);

    // oracle: tails computed straight from the Fourier coefficients
    const std::size_t nb = ladder.size();
    std::vector<double> sup_tail(nb, 0.0);
    for (const auto& w : family) {
      const SpectralField sw = to_spectral(w);
      for (std::size_t k = 0; k < nb; ++k) {
        double acc = 0.0;
        for (std::size_t b = k; b < nb; ++b) {
          const double lam = ladder.bands()[b];
          acc += std::pow(lam, 2 * s) * (ladder.band_multiplier_at(b).square() * sw.coeffs().abs2()).sum();
        }
        sup_tail[k] = std::max(sup_tail[k], std::sqrt(acc) / g->length());
      }
    }
    const double top = sup_tail[0];
    std::vector<int> level(nb, 0);
    int mlev = 0;
    std::size_t nu = 0;
    while (true) {
      std::size_t cand = nb;
      for (std::size_t k = nu + 1; k < nb; ++k)
        if (sup_tail[k] / top <= std::ldexp(1.0, -(mlev + 1))) {
          cand = k;
          break;
        }
      if (cand == nb) break;
      ++mlev;
      for (std::size_t k = cand; k < nb; ++k) level[k] = mlev;
      nu = cand;
    }
    for (std::size_t k = 0; k < nb; ++k)
      CHECK(m.values()[k] == doctest::Approx(std::exp2(level[k] / 8.0) * std::pow(ladder.bands()[k], s)));
    const auto wc = weight_char(m);
    CHECK(wc.m_star >= s - 1e-12);
    CHECK(wc.m_upper <= s + 0.125 + 1e-12);
    for (const auto& w : family) CHECK(sobolev_norm(ladder, w, m) <= 2.0 * sobolev_norm(ladder, w, s));
  }

  SUBCASE("zero family") {
    CHECK_THROWS_AS(build_compactness_weight(ladder, {ComplexField(g)}, s), ConfigError);
    CHECK_THROWS_AS(build_compactness_weight(ladder, {}, s), ConfigError);
  }
}
