#ifndef CSS2D_GRID_HPP
#define CSS2D_GRID_HPP

#include <complex>
#include <memory>

#include <Eigen/Dense>

namespace css2d {

using cplx = std::complex<double>;

template <typename Scalar>
using GridArray = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using RArray = GridArray<double>;
using CArray = GridArray<cplx>;

enum class Axis { One = 1, Two = 2 };

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

/// Periodic n x n box of side L standing in for R^2.
///
/// Sample (i, j) sits at x = (i dx, j dx). Fourier index (i, j) in FFT order
/// maps to the signed index j_a in [-n/2, n/2) and wavevector xi = k0 (j_1, j_2).
/// The grid owns the FFTW plans; it is immutable and shared by every field on it.
class Grid {
 public:
  static GridPtr create(int n, double length);

  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;
  ~Grid();

  int n() const { return n_; }
  double length() const { return length_; }
  double dx() const { return length_ / n_; }
  double k0() const;
  /// Area element dx^2 of the physical quadrature.
  double cell_area() const { return dx() * dx(); }
  double nyquist_radius() const;
  /// Smallest dyadic number >= nyquist_radius().
  double lambda_max() const { return lambda_max_; }

  /// Signed Fourier index for FFT-order position p.
  int signed_index(int p) const { return p < n_ / 2 ? p : p - n_; }

  const RArray& xi1() const { return xi1_; }
  const RArray& xi2() const { return xi2_; }
  const RArray& xi_abs() const { return xi_abs_; }
  const RArray& xi_sq() const { return xi_sq_; }
  /// 1 where the 2/3 rule keeps the mode, 0 elsewhere.
  const RArray& dealias_mask() const { return dealias_mask_; }
  /// xi_axis with the axis Nyquist column/row set to zero.
  const RArray& derivative_symbol(Axis axis) const {
    return axis == Axis::One ? dsym1_ : dsym2_;
  }

  /// Unnormalised forward DFT (exponent sign -1), out-of-place.
  void fft_forward(const cplx* in, cplx* out) const;
  /// Unnormalised backward DFT (exponent sign +1), out-of-place.
  void fft_backward(const cplx* in, cplx* out) const;

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && length_ == other.length_;
  }

 private:
  Grid(int n, double length);

  int n_;
  double length_;
  double lambda_max_;
  RArray xi1_, xi2_, xi_abs_, xi_sq_, dealias_mask_, dsym1_, dsym2_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

}  // namespace css2d

#endif  // CSS2D_GRID_HPP
