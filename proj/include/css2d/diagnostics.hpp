#ifndef CSS2D_DIAGNOSTICS_HPP
#define CSS2D_DIAGNOSTICS_HPP

#include <vector>

#include "css2d/evolution.hpp"

namespace css2d {

/// M = 1/2 integral |phi|^2.
double mass(const ComplexField& phi);

/// D_i phi = d_i phi + i A_i phi.
ComplexVectorField covariant_grad(const ComplexField& phi, const RealVectorField& a);

/// E = integral 1/2 |D_x phi|^2 + kappa/4 |phi|^4, the quartic term built from
/// the dealiased density.
double energy(const ComplexField& phi, const RealVectorField& a, double kappa);
double energy(const ComplexField& phi, double kappa);

/// Sobolev norms on the dyadic ladder.
double h1_norm(const ComplexField& phi);
double hs_norm(const ComplexField& phi, double s);

/// (integral_0^T ||phi(t)||_{L^r}^q dt)^{1/q} over the stored snapshots,
/// trapezoid rule. Requires 2/q + 2/r = 1 and r finite.
double strichartz_accumulate(const Trajectory& traj, double q, double r);

struct CovariantResidual {
  double res1 = 0.0;  ///< D_t phi - i D_j D_j phi + i kappa |phi|^2 phi
  double res2 = 0.0;  ///< rot A_x + (|phi|^2 - mean)/2
  double res3 = 0.0;  ///< d_t A_i - d_i A_0 + eps_ij Im(conj(phi) D_j phi), mean removed
};

/// L^inf residuals of the gauge-covariant system at interior snapshots, with
/// time derivatives by centred differences. On the torus the momentum density
/// has a nonzero mean while A does not, so res3 is taken modulo constants.
CovariantResidual covariant_residual(const Trajectory& traj);

struct EnergyBound {
  double constant = 1.0;
  /// For kappa <= 0 the bound is only available below this mass.
  double small_mass = 0.1;
};

/// C (M + E + M E)^{1/2}; for kappa <= 0, |E| replaces E and the mass gate applies.
double energy_space_bound(double mass0, double energy0, double kappa, const EnergyBound& cfg = {});

/// Largest ||phi||_{H^1} / (M + E + M E)^{1/2} over a family.
double calibrate_energy_bound(const std::vector<ComplexField>& family, double kappa);

}  // namespace css2d

#endif  // CSS2D_DIAGNOSTICS_HPP
