#ifndef CSS2D_TEST_HELPERS_HPP
#define CSS2D_TEST_HELPERS_HPP

#include <cmath>
#include <random>

#include "css2d/field.hpp"
#include "css2d/spectral.hpp"

namespace testing {

using namespace css2d;

// Random field with Fourier support in max(|j1|,|j2|) <= cutoff.
inline ComplexField random_field(const GridPtr& g, unsigned seed, int cutoff, double decay = 0.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const int n = g->n();
  SpectralField s(g);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const int j1 = g->signed_index(p), j2 = g->signed_index(q);
      if (std::max(std::abs(j1), std::abs(j2)) > cutoff) continue;
      const double amp = std::pow(1.0 + std::hypot(j1, j2), -decay);
      s.coeffs()(p, q) = amp * cplx(nd(rng), nd(rng));
    }
  ComplexField u = to_physical(s);
  return (1.0 / linf_norm(u)) * u;
}

inline RealField random_real(const GridPtr& g, unsigned seed, int cutoff, double decay = 0.0) {
  const ComplexField u = random_field(g, seed, cutoff, decay);
  return RealField(g, u.values().real());
}

// Divergence-free field from a random real stream function.
inline RealVectorField random_divfree(const GridPtr& g, unsigned seed, int cutoff, double decay = 0.0) {
  const ComplexField psi = to_complex(random_real(g, seed, cutoff, decay));
  return RealVectorField(real_part(derivative(psi, Axis::Two)), real_part(-derivative(psi, Axis::One)));
}

inline double max_abs_diff(const ComplexField& a, const ComplexField& b) {
  return (a.values() - b.values()).abs().maxCoeff();
}

inline double max_abs_diff(const RealField& a, const RealField& b) {
  return (a.values() - b.values()).abs().maxCoeff();
}

inline double slope(double e_coarse, double e_fine, double ratio = 2.0) {
  return std::log(e_coarse / e_fine) / std::log(ratio);
}

}  // namespace testing

#endif
