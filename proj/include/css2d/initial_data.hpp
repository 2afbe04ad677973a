#ifndef CSS2D_INITIAL_DATA_HPP
#define CSS2D_INITIAL_DATA_HPP

#include <cstdint>

#include "css2d/config.hpp"

namespace css2d {

/// a e^{-|x-x0|^2/w^2} e^{i k.x}; k must be commensurate with the box.
ComplexField gaussian_data(const GridPtr& g, double a, double w, double x1, double x2, double k1, double k2);
/// a e^{i k.x}; k must be commensurate with the box.
ComplexField plane_wave_data(const GridPtr& g, double a, double k1, double k2);
/// Coefficients (1+|xi|)^{-slope} with uniform random phases from a seeded
/// mt19937_64, dealiased and rescaled to ||.||_{H^s} = radius.
ComplexField random_hs_data(const GridPtr& g, double s, double slope, double radius, std::uint64_t seed);

ComplexField make_initial_data(const SimConfig& cfg, const GridPtr& g);
ComplexField make_initial_data(const SimConfig& cfg);

}  // namespace css2d

#endif  // CSS2D_INITIAL_DATA_HPP
