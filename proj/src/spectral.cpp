#include "css2d/spectral.hpp"

#include <cmath>

namespace css2d {

SpectralField to_spectral(const ComplexField& u) {
  const Grid& g = u.grid();
  CArray out(g.n(), g.n());
  g.fft_forward(u.values().data(), out.data());
  out *= g.cell_area();
  return SpectralField(u.grid_ptr(), std::move(out));
}

ComplexField to_physical(const SpectralField& u_hat) {
  const Grid& g = u_hat.grid();
  CArray out(g.n(), g.n());
  g.fft_backward(u_hat.coeffs().data(), out.data());
  out /= g.length() * g.length();
  return ComplexField(u_hat.grid_ptr(), std::move(out));
}

ComplexField apply_symbol(const ComplexField& u, const RArray& symbol) {
  SpectralField s = to_spectral(u);
  s.coeffs() *= symbol.cast<cplx>();
  return to_physical(s);
}

ComplexField apply_symbol(const ComplexField& u, const CArray& symbol) {
  SpectralField s = to_spectral(u);
  s.coeffs() *= symbol;
  return to_physical(s);
}

ComplexField derivative(const ComplexField& u, Axis axis) {
  SpectralField s = to_spectral(u);
  s.coeffs() *= cplx(0.0, 1.0) * u.grid().derivative_symbol(axis).cast<cplx>();
  return to_physical(s);
}

ComplexVectorField gradient(const ComplexField& u) {
  const Grid& g = u.grid();
  const SpectralField s = to_spectral(u);
  SpectralField d1(u.grid_ptr(), s.coeffs() * cplx(0.0, 1.0) * g.derivative_symbol(Axis::One).cast<cplx>());
  SpectralField d2(u.grid_ptr(), s.coeffs() * cplx(0.0, 1.0) * g.derivative_symbol(Axis::Two).cast<cplx>());
  return ComplexVectorField(to_physical(d1), to_physical(d2));
}

ComplexField divergence(const ComplexVectorField& v) {
  const Grid& g = v.c1.grid();
  const cplx I(0.0, 1.0);
  SpectralField s(v.grid_ptr(), I * g.derivative_symbol(Axis::One).cast<cplx>() * to_spectral(v.c1).coeffs() +
                                    I * g.derivative_symbol(Axis::Two).cast<cplx>() * to_spectral(v.c2).coeffs());
  return to_physical(s);
}

ComplexField rot(const ComplexVectorField& v) {
  const Grid& g = v.c1.grid();
  const cplx I(0.0, 1.0);
  SpectralField s(v.grid_ptr(), I * g.derivative_symbol(Axis::One).cast<cplx>() * to_spectral(v.c2).coeffs() -
                                    I * g.derivative_symbol(Axis::Two).cast<cplx>() * to_spectral(v.c1).coeffs());
  return to_physical(s);
}

ComplexField laplacian(const ComplexField& u) {
  return apply_symbol(u, RArray(-u.grid().xi_sq()));
}

ComplexField riesz(const ComplexField& u, Axis axis) {
  const Grid& g = u.grid();
  const RArray& xi = axis == Axis::One ? g.xi1() : g.xi2();
  CArray symbol = (cplx(0.0, 1.0) * (xi / g.xi_abs()).cast<cplx>());
  symbol(0, 0) = 0.0;
  return apply_symbol(u, symbol);
}

namespace {

RArray inverse_xi_sq(const Grid& g) {
  RArray inv = g.xi_sq().inverse();
  inv(0, 0) = 0.0;
  return inv;
}

bool mean_is_significant(const SpectralField& f_hat, const ComplexField& f) {
  return std::abs(f_hat.coeffs()(0, 0)) > 1e-8 * l2_norm(f);
}

}  // namespace

PoissonSolution inv_laplacian_checked(const ComplexField& f) {
  SpectralField s = to_spectral(f);
  const bool flag = mean_is_significant(s, f);
  s.coeffs() *= inverse_xi_sq(f.grid()).cast<cplx>();
  return {to_physical(s), flag};
}

ComplexField inv_laplacian(const ComplexField& f) { return inv_laplacian_checked(f).value; }

PoissonSolution grad_inv_laplacian_checked(const ComplexField& f, Axis axis) {
  const Grid& g = f.grid();
  SpectralField s = to_spectral(f);
  const bool flag = mean_is_significant(s, f);
  s.coeffs() *= cplx(0.0, 1.0) * (g.derivative_symbol(axis) * inverse_xi_sq(g)).cast<cplx>();
  return {to_physical(s), flag};
}

ComplexField grad_inv_laplacian(const ComplexField& f, Axis axis) {
  return grad_inv_laplacian_checked(f, axis).value;
}

SpectralField dealias(const SpectralField& u_hat) {
  return SpectralField(u_hat.grid_ptr(), u_hat.coeffs() * u_hat.grid().dealias_mask().cast<cplx>());
}

ComplexField dealias(const ComplexField& u) { return to_physical(dealias(to_spectral(u))); }

bool is_dealiased(const ComplexField& u, double tol) {
  const SpectralField s = to_spectral(u);
  const double outside = ((1.0 - u.grid().dealias_mask()) * s.coeffs().abs()).maxCoeff();
  return outside <= tol * std::max(s.coeffs().abs().maxCoeff(), 1e-300);
}

ComplexField product(const ComplexField& a, const ComplexField& b) {
  a.require_same_grid(b);
  return dealias(ComplexField(a.grid_ptr(), a.values() * b.values()));
}

ComplexField dot_product(const ComplexVectorField& a, const ComplexVectorField& b) {
  a.c1.require_same_grid(b.c1);
  return dealias(ComplexField(a.grid_ptr(), a.c1.values() * b.c1.values() + a.c2.values() * b.c2.values()));
}

RealField real_part(const ComplexField& f, double tol) {
  const double scale = f.values().abs().maxCoeff();
  const double residue = f.values().imag().abs().maxCoeff();
  if (residue > tol * std::max(scale, 1e-300) && residue > 1e-300)
    throw Error("imaginary residue " + std::to_string(residue) + " exceeds tolerance for a real field");
  return RealField(f.grid_ptr(), f.values().real());
}

RealVectorField real_part(const ComplexVectorField& f, double tol) {
  return RealVectorField(real_part(f.c1, tol), real_part(f.c2, tol));
}

double l2_norm(const ComplexField& u) {
  return std::sqrt(u.values().abs2().sum() * u.grid().cell_area());
}

double l2_norm(const RealField& u) {
  return std::sqrt(u.values().square().sum() * u.grid().cell_area());
}

double linf_norm(const ComplexField& u) { return u.values().abs().maxCoeff(); }
double linf_norm(const RealField& u) { return u.values().abs().maxCoeff(); }

double linf_norm(const RealVectorField& v) {
  return (v.c1.values().square() + v.c2.values().square()).sqrt().maxCoeff();
}

double lp_norm(const ComplexField& u, double p) {
  return std::pow(u.values().abs().pow(p).sum() * u.grid().cell_area(), 1.0 / p);
}

cplx inner(const ComplexField& u, const ComplexField& v) {
  u.require_same_grid(v);
  return (u.values() * v.values().conjugate()).sum() * u.grid().cell_area();
}

cplx mean(const ComplexField& u) { return u.values().mean(); }
double mean(const RealField& u) { return u.values().mean(); }

}  // namespace css2d
