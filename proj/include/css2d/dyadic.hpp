#ifndef CSS2D_DYADIC_HPP
#define CSS2D_DYADIC_HPP

#include <filesystem>
#include <memory>
#include <vector>

#include "css2d/field.hpp"

namespace css2d {

/// Smooth radial cutoff: 1 on |xi| <= 1, 0 on |xi| >= 2, and
/// psi(|xi| - 1) in between with psi(t) = h(1-t) / (h(t) + h(1-t)),
/// h(t) = exp(-1/t) for t > 0.
struct StandardBump {
  double operator()(double r) const;
};

StandardBump make_standard_phi1();

/// Inhomogeneous Littlewood-Paley ladder on a grid: bands 1, 2, 4, ...,
/// lambda_max with phi_1 = bump(xi) and phi_lambda = bump(xi/lambda) - bump(2 xi/lambda).
class DyadicLadder {
 public:
  explicit DyadicLadder(GridPtr grid);

  /// Shared, lazily built ladder for a grid.
  static std::shared_ptr<const DyadicLadder> for_grid(const GridPtr& grid);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<double>& bands() const { return bands_; }
  std::size_t size() const { return bands_.size(); }
  /// Index of a ladder band; throws for a value that is not on the ladder.
  std::size_t band_index(double lambda) const;
  bool contains(double lambda) const;

  /// phi_lambda on the grid (FFT order).
  const RArray& band_multiplier(double lambda) const { return band_[band_index(lambda)]; }
  const RArray& band_multiplier_at(std::size_t k) const { return band_[k]; }
  /// Symbol of P_{<= mu}: bump(xi/mu) for dyadic mu >= 1, the zero symbol for mu < 1.
  RArray leq_multiplier(double mu) const;
  /// Sum_{nu <= lambda} phi_nu, built band by band.
  RArray cumulative_multiplier(double lambda) const;

 private:
  GridPtr grid_;
  std::vector<double> bands_;
  std::vector<RArray> band_;
};

ComplexField band_project(const DyadicLadder& ladder, const ComplexField& u, double lambda);
/// P_{<= lambda}.
ComplexField project_leq(const DyadicLadder& ladder, const ComplexField& u, double lambda);
/// P_{< lambda} = P_{<= lambda/2}; the zero operator for lambda = 1.
ComplexField project_lt(const DyadicLadder& ladder, const ComplexField& u, double lambda);

/// ||P_lambda u||_{L^2} for every band, in ladder order.
std::vector<double> band_norms(const DyadicLadder& ladder, const ComplexField& u);

/// A positive weight on the ladder bands.
class SobolevWeight {
 public:
  SobolevWeight(std::vector<double> bands, std::vector<double> values);
  /// m(lambda) = lambda^s.
  static SobolevWeight power(const DyadicLadder& ladder, double s);

  const std::vector<double>& bands() const { return bands_; }
  const std::vector<double>& values() const { return values_; }
  double operator()(double lambda) const;

  /// Two-column text table: lambda m(lambda).
  void write_table(const std::filesystem::path& path) const;
  static SobolevWeight read_table(const std::filesystem::path& path);

 private:
  std::vector<double> bands_;
  std::vector<double> values_;
};

struct WeightCharacteristics {
  double m_star;   ///< inf log2 m(2 lambda)/m(lambda)
  double m_upper;  ///< sup log2 m(2 lambda)/m(lambda)
  double m_char;   ///< max(-m_star, m_upper)
};

WeightCharacteristics weight_char(const SobolevWeight& m);

/// (Sum_lambda m(lambda)^2 ||P_lambda u||^2)^{1/2}.
double sobolev_norm(const DyadicLadder& ladder, const ComplexField& u, const SobolevWeight& m);
/// Besov-type H^s norm, m(lambda) = lambda^s.
double sobolev_norm(const DyadicLadder& ladder, const ComplexField& u, double s);
double sobolev_norm(const ComplexField& u, double s);

/// Tail (Sum_{lambda >= nu} lambda^{2s} ||P_lambda u||^2)^{1/2} for every nu on the ladder.
std::vector<double> hs_tails(const DyadicLadder& ladder, const ComplexField& u, double s);

/// Weight 2^{m/8} lambda^s on [nu_m, nu_{m+1}), where nu_m is the smallest
/// band beyond nu_{m-1} whose family-wide H^s tail (after normalising the sup
/// of the family to 1) is at most 2^{-m}.
SobolevWeight build_compactness_weight(const DyadicLadder& ladder, const std::vector<ComplexField>& family,
                                       double s);

}  // namespace css2d

#endif  // CSS2D_DYADIC_HPP
