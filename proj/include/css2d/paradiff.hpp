#ifndef CSS2D_PARADIFF_HPP
#define CSS2D_PARADIFF_HPP

#include <memory>
#include <vector>

#include "css2d/dyadic.hpp"

namespace css2d {

/// Band multipliers for the two paraproducts on one grid.
///
/// P splits 2 B.grad w by letting B carry frequencies <= lambda/32 against w at
/// lambda; Q takes B at lambda against w below 32 lambda. For lambda < 32 the
/// low projection is empty, so P vanishes identically on coarse ladders.
class ParaproductPlan {
 public:
  explicit ParaproductPlan(std::shared_ptr<const DyadicLadder> ladder);
  static std::shared_ptr<const ParaproductPlan> for_grid(const GridPtr& grid);

  static constexpr double kLowRatio = 1.0 / 32.0;
  static constexpr double kHighRatio = 32.0;

  const DyadicLadder& ladder() const { return *ladder_; }
  const Grid& grid() const { return ladder_->grid(); }
  double low_cut(double lambda) const { return kLowRatio * lambda; }
  /// P_{< 32 lambda} = P_{<= 16 lambda}.
  double high_cut(double lambda) const { return 0.5 * kHighRatio * lambda; }

  /// Symbols of P_{<= lambda/32} and P_{<= 16 lambda} for ladder band k.
  const RArray& low(std::size_t k) const { return low_[k]; }
  const RArray& high(std::size_t k) const { return high_[k]; }
  bool has_low(std::size_t k) const { return has_low_[k]; }

 private:
  std::shared_ptr<const DyadicLadder> ladder_;
  std::vector<RArray> low_, high_;
  std::vector<bool> has_low_;
};

/// P_B w = sum_lambda [P_{<=lambda/32}B . P_lambda grad w + P_lambda(P_{<=lambda/32}B . grad w)].
ComplexField frak_p(const RealVectorField& b, const ComplexField& w);
ComplexField frak_p(const ComplexVectorField& b, const ComplexField& w);
/// Q_B w = sum_lambda [P_lambda B . P_{<32 lambda} grad w + P_{<32 lambda}(P_lambda B . grad w)].
ComplexField frak_q(const RealVectorField& b, const ComplexField& w);
ComplexField frak_q(const ComplexVectorField& b, const ComplexField& w);

/// ||P_B w + Q_B w - 2 B.grad w||_inf / (||B||_inf ||grad w||_inf), the last
/// product taken pointwise on the grid without projection.
double partition_residual(const RealVectorField& b, const ComplexField& w);

/// Q[u1, u2, u3] = Q_{N2_x[u1,u2]} u3.
ComplexField q_trilinear(const ComplexField& u1, const ComplexField& u2, const ComplexField& u3);

}  // namespace css2d

#endif  // CSS2D_PARADIFF_HPP
