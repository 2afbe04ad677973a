#ifndef CSS2D_GAUGE_HPP
#define CSS2D_GAUGE_HPP

#include <vector>

#include "css2d/field.hpp"

namespace css2d {

/// Coulomb-gauge potentials slaved to phi.
///
/// On the torus the curl equation only holds up to the mean of the density:
/// rot A_x = -(rho - mean rho) / 2, with rho = |phi|^2 after the 2/3 projection.
/// A_0 is fixed to zero mean.
struct GaugePotential {
  RealVectorField ax;
  RealField a0;
  double mean_charge = 0.0;
};

/// Dealiased charge density |phi|^2.
ComplexField charge_density(const ComplexField& phi);

/// A_i = -1/2 eps_ij d_j (-Laplacian)^{-1} |phi|^2.
RealVectorField compute_ax(const ComplexField& phi);
/// Solves -Laplacian A_0 = -Im(grad conj(phi) ^ grad phi) - rot(A |phi|^2).
/// Throws if either source term has a mean above 1e-8 of its scale.
RealField compute_a0(const ComplexField& phi, const RealVectorField& ax);
GaugePotential compute_gauge(const ComplexField& phi);

/// N2_i[u1, u2] = eps_ij d_j / (-Laplacian) (u1 u2).
ComplexVectorField n2x(const ComplexField& u1, const ComplexField& u2);
/// N2_0[u1, u2] = (-Laplacian)^{-1} (grad u1 ^ grad u2).
ComplexField n20(const ComplexField& u1, const ComplexField& u2);
/// N4_t = rot / (-Laplacian) (N2_x[u1, u2] u3 u4).
ComplexField n4t(const ComplexField& u1, const ComplexField& u2, const ComplexField& u3,
                 const ComplexField& u4);
/// N4_x = -i N2_x[u1, u2] . N2_x[u3, u4].
ComplexField n4x(const ComplexField& u1, const ComplexField& u2, const ComplexField& u3,
                 const ComplexField& u4);

/// ||div A_x||_inf.
double divergence_residual(const RealVectorField& ax);
/// ||d1 A2 - d2 A1 + (rho - mean rho)/2||_inf with the dealiased density.
double curl_residual(const RealVectorField& ax, const ComplexField& phi);
/// max_x (sum_ij (d_j B_i)^2)^{1/2}.
double gradient_linf(const RealVectorField& b);

/// Running certificate for an admissible form B(t).
struct AdmissibleFormCert {
  double sup_norm = 0.0;     ///< max_t ||B(t)||_inf
  double grad_l1linf = 0.0;  ///< integral ||grad B(t)||_inf dt, trapezoid rule
  double div_residual = 0.0; ///< max_t ||div B(t)||_inf

  bool satisfies_gradient_bound() const { return grad_l1linf <= 1.0; }
  bool satisfies_sup_bound(double k1, double m) const { return sup_norm <= k1 * m * m; }
};

/// Single-writer accumulator fed one sample per time level.
class CertAccumulator {
 public:
  void add(const RealVectorField& b, double dt);
  const AdmissibleFormCert& cert() const { return cert_; }
  std::size_t samples() const { return samples_; }

 private:
  AdmissibleFormCert cert_;
  double last_grad_ = 0.0;
  std::size_t samples_ = 0;
};

/// Certificate of a uniformly sampled series B(t_0), B(t_0 + dt), ...
AdmissibleFormCert certify(const std::vector<RealVectorField>& series, double dt);

/// Largest ||N2_x[u1,u2]||_inf / (||u1||_{H^1} ||u2||_{H^1}) over all pairs of
/// a family; twice this is an empirical stand-in for K1.
double measure_n2x_constant(const std::vector<ComplexField>& family);

}  // namespace css2d

#endif  // CSS2D_GAUGE_HPP
