#ifndef CSS2D_SPECTRAL_HPP
#define CSS2D_SPECTRAL_HPP

#include "css2d/field.hpp"

namespace css2d {

SpectralField to_spectral(const ComplexField& u);
ComplexField to_physical(const SpectralField& u_hat);

/// Multiply by an arbitrary Fourier symbol (FFT-ordered n x n array).
ComplexField apply_symbol(const ComplexField& u, const RArray& symbol);
ComplexField apply_symbol(const ComplexField& u, const CArray& symbol);

/// Multiplier i xi_axis, with the axis Nyquist mode zeroed.
ComplexField derivative(const ComplexField& u, Axis axis);
ComplexVectorField gradient(const ComplexField& u);
ComplexField divergence(const ComplexVectorField& v);
/// rot v = d1 v2 - d2 v1.
ComplexField rot(const ComplexVectorField& v);
ComplexField laplacian(const ComplexField& u);

/// Multiplier i xi_axis / |xi|, zero at xi = 0. The Nyquist mode is kept so
/// that R1^2 + R2^2 = -1 on every mean-zero grid field.
ComplexField riesz(const ComplexField& u, Axis axis);

struct PoissonSolution {
  ComplexField value;
  /// Set when |integral f| > 1e-8 ||f||_{L^2}; the mean-projected problem was solved.
  bool mean_flag = false;
};

/// (-Laplacian)^{-1} with the zero mode of the result set to 0.
PoissonSolution inv_laplacian_checked(const ComplexField& f);
ComplexField inv_laplacian(const ComplexField& f);
/// d_axis / (-Laplacian): the periodic Biot-Savart operator.
PoissonSolution grad_inv_laplacian_checked(const ComplexField& f, Axis axis);
ComplexField grad_inv_laplacian(const ComplexField& f, Axis axis);

/// 2/3 rule: zero every coefficient with max(|j1|, |j2|) > n/3.
SpectralField dealias(const SpectralField& u_hat);
ComplexField dealias(const ComplexField& u);
bool is_dealiased(const ComplexField& u, double tol = 1e-13);

/// Pointwise product followed by the 2/3 projection.
ComplexField product(const ComplexField& a, const ComplexField& b);
/// a . b summed over components, dealiased once.
ComplexField dot_product(const ComplexVectorField& a, const ComplexVectorField& b);

/// Real part, failing if the imaginary residue exceeds tol * max|f|.
RealField real_part(const ComplexField& f, double tol = 1e-12);
RealVectorField real_part(const ComplexVectorField& f, double tol = 1e-12);

double l2_norm(const ComplexField& u);
double l2_norm(const RealField& u);
double linf_norm(const ComplexField& u);
double linf_norm(const RealField& u);
/// max_x |v(x)| with the Euclidean norm over components.
double linf_norm(const RealVectorField& v);
double lp_norm(const ComplexField& u, double p);
/// (u, v) = integral u conj(v) dx.
cplx inner(const ComplexField& u, const ComplexField& v);
cplx mean(const ComplexField& u);
double mean(const RealField& u);

}  // namespace css2d

#endif  // CSS2D_SPECTRAL_HPP
