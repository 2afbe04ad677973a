#include "css2d/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "css2d/dyadic.hpp"
#include "css2d/spectral.hpp"

namespace css2d {

namespace {

const cplx I(0.0, 1.0);

// floor: the size of the inputs, so a source that cancels to roundoff is not flagged
void require_mean_zero(const ComplexField& source, double floor, const char* what) {
  const double scale = std::max({linf_norm(source), floor, 1e-300});
  if (std::abs(mean(source)) > 1e-8 * scale)
    throw Error(std::string("source term ") + what + " has a nonzero mean; discretisation is inconsistent");
}

}  // namespace

ComplexField charge_density(const ComplexField& phi) { return product(conj(phi), phi); }

RealVectorField compute_ax(const ComplexField& phi) {
  const ComplexField rho = charge_density(phi);
  ComplexField a1 = -0.5 * grad_inv_laplacian(rho, Axis::Two);
  ComplexField a2 = 0.5 * grad_inv_laplacian(rho, Axis::One);
  return RealVectorField(real_part(a1), real_part(a2));
}

RealField compute_a0(const ComplexField& phi, const RealVectorField& ax) {
  const ComplexVectorField dphi = gradient(phi);
  const ComplexField wedge = product(conj(dphi.c1), dphi.c2) - product(conj(dphi.c2), dphi.c1);
  const ComplexField current_term(phi.grid_ptr(), -wedge.values().imag().cast<cplx>());

  const ComplexField rho = charge_density(phi);
  const ComplexVectorField flux(product(to_complex(ax.c1), rho), product(to_complex(ax.c2), rho));
  const ComplexField rot_term = -rot(flux);

  const double g1 = linf_norm(dphi.c1), g2 = linf_norm(dphi.c2);
  require_mean_zero(current_term, g1 * g2, "Im(grad conj(phi) ^ grad phi)");
  require_mean_zero(rot_term, linf_norm(flux.c1) + linf_norm(flux.c2), "rot(A |phi|^2)");
  return real_part(inv_laplacian(current_term + rot_term));
}

GaugePotential compute_gauge(const ComplexField& phi) {
  GaugePotential g;
  g.ax = compute_ax(phi);
  g.a0 = compute_a0(phi, g.ax);
  g.mean_charge = phi.values().abs2().mean();
  return g;
}

ComplexVectorField n2x(const ComplexField& u1, const ComplexField& u2) {
  const ComplexField p = product(u1, u2);
  return ComplexVectorField(grad_inv_laplacian(p, Axis::Two), -grad_inv_laplacian(p, Axis::One));
}

ComplexField n20(const ComplexField& u1, const ComplexField& u2) {
  const ComplexVectorField g1 = gradient(u1);
  const ComplexVectorField g2 = gradient(u2);
  const ComplexField wedge(u1.grid_ptr(), g1.c1.values() * g2.c2.values() - g1.c2.values() * g2.c1.values());
  return inv_laplacian(dealias(wedge));
}

ComplexField n4t(const ComplexField& u1, const ComplexField& u2, const ComplexField& u3,
                 const ComplexField& u4) {
  const ComplexVectorField n = n2x(u1, u2);
  const ComplexField p = product(u3, u4);
  return inv_laplacian(rot(ComplexVectorField(product(n.c1, p), product(n.c2, p))));
}

ComplexField n4x(const ComplexField& u1, const ComplexField& u2, const ComplexField& u3,
                 const ComplexField& u4) {
  return -I * dot_product(n2x(u1, u2), n2x(u3, u4));
}

double divergence_residual(const RealVectorField& ax) {
  return linf_norm(divergence(to_complex(ax)));
}

double curl_residual(const RealVectorField& ax, const ComplexField& phi) {
  const ComplexField rho = charge_density(phi);
  ComplexField r = rot(to_complex(ax));
  r.values() += 0.5 * (rho.values() - rho.values().mean());
  return linf_norm(r);
}

double gradient_linf(const RealVectorField& b) {
  const ComplexVectorField g1 = gradient(to_complex(b.c1));
  const ComplexVectorField g2 = gradient(to_complex(b.c2));
  const RArray frob = g1.c1.values().abs2() + g1.c2.values().abs2() + g2.c1.values().abs2() +
                      g2.c2.values().abs2();
  return std::sqrt(frob.maxCoeff());
}

void CertAccumulator::add(const RealVectorField& b, double dt) {
  const double grad = gradient_linf(b);
  if (samples_ > 0) cert_.grad_l1linf += 0.5 * dt * (last_grad_ + grad);
  last_grad_ = grad;
  cert_.sup_norm = std::max(cert_.sup_norm, linf_norm(b));
  cert_.div_residual = std::max(cert_.div_residual, divergence_residual(b));
  ++samples_;
}

AdmissibleFormCert certify(const std::vector<RealVectorField>& series, double dt) {
  CertAccumulator acc;
  for (const auto& b : series) acc.add(b, dt);
  return acc.cert();
}

double measure_n2x_constant(const std::vector<ComplexField>& family) {
  double worst = 0.0;
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = a; b < family.size(); ++b) {
      const double denom = sobolev_norm(family[a], 1.0) * sobolev_norm(family[b], 1.0);
      if (denom <= 0.0) continue;
      const ComplexVectorField n = n2x(family[a], family[b]);
      const double sup = std::sqrt((n.c1.values().abs2() + n.c2.values().abs2()).maxCoeff());
      worst = std::max(worst, sup / denom);
    }
  return worst;
}

}  // namespace css2d
