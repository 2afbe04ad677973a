#ifndef CSS2D_FIELD_HPP
#define CSS2D_FIELD_HPP

#include <utility>

#include "css2d/error.hpp"
#include "css2d/grid.hpp"

namespace css2d {

/// Samples of a scalar field on a periodic grid, physical space, row-major.
template <typename Scalar>
class Field {
 public:
  using Array = GridArray<Scalar>;

  Field() = default;
  explicit Field(GridPtr grid)
      : grid_(std::move(grid)), values_(Array::Zero(grid_->n(), grid_->n())) {}
  Field(GridPtr grid, Array values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.rows() != grid_->n() || values_.cols() != grid_->n())
      throw Error("field array shape does not match grid");
  }

  template <typename Fn>
  static Field from_function(GridPtr grid, Fn&& fn) {
    Field f(grid);
    const double dx = grid->dx();
    for (int i = 0; i < grid->n(); ++i)
      for (int j = 0; j < grid->n(); ++j) f.values_(i, j) = fn(i * dx, j * dx);
    return f;
  }

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Array& values() { return values_; }
  const Array& values() const { return values_; }
  Scalar& operator()(int i, int j) { return values_(i, j); }
  const Scalar& operator()(int i, int j) const { return values_(i, j); }

  bool same_grid(const Field& other) const {
    return grid_ == other.grid_ || (grid_ && other.grid_ && *grid_ == *other.grid_);
  }
  void require_same_grid(const Field& other) const {
    if (!same_grid(other)) throw GridMismatch();
  }
  bool all_finite() const { return values_.isFinite().all(); }

  Field& operator+=(const Field& o) {
    require_same_grid(o);
    values_ += o.values_;
    return *this;
  }
  Field& operator-=(const Field& o) {
    require_same_grid(o);
    values_ -= o.values_;
    return *this;
  }
  Field& operator*=(Scalar c) {
    values_ *= c;
    return *this;
  }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Scalar c, Field a) { return a *= c; }
  friend Field operator*(Field a, Scalar c) { return a *= c; }
  friend Field operator-(Field a) {
    a.values_ = -a.values_;
    return a;
  }

 private:
  GridPtr grid_;
  Array values_;
};

using ComplexField = Field<cplx>;
using RealField = Field<double>;

/// Two-component field (index i in {1, 2}).
template <typename Scalar>
struct VectorField {
  Field<Scalar> c1;
  Field<Scalar> c2;

  VectorField() = default;
  explicit VectorField(const GridPtr& grid) : c1(grid), c2(grid) {}
  VectorField(Field<Scalar> a, Field<Scalar> b) : c1(std::move(a)), c2(std::move(b)) {
    c1.require_same_grid(c2);
  }

  const Field<Scalar>& operator[](Axis a) const { return a == Axis::One ? c1 : c2; }
  Field<Scalar>& operator[](Axis a) { return a == Axis::One ? c1 : c2; }
  const GridPtr& grid_ptr() const { return c1.grid_ptr(); }

  VectorField& operator*=(Scalar c) {
    c1 *= c;
    c2 *= c;
    return *this;
  }
  friend VectorField operator+(VectorField a, const VectorField& b) {
    a.c1 += b.c1;
    a.c2 += b.c2;
    return a;
  }
  friend VectorField operator-(VectorField a, const VectorField& b) {
    a.c1 -= b.c1;
    a.c2 -= b.c2;
    return a;
  }
  friend VectorField operator*(Scalar c, VectorField a) { return a *= c; }
};

using RealVectorField = VectorField<double>;
using ComplexVectorField = VectorField<cplx>;

/// Fourier coefficients indexed by xi in FFT order, normalised so that
/// coeffs ~ integral of exp(-i x.xi) u(x) dx.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(GridPtr grid)
      : grid_(std::move(grid)), coeffs_(CArray::Zero(grid_->n(), grid_->n())) {}
  SpectralField(GridPtr grid, CArray coeffs) : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {}

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  CArray& coeffs() { return coeffs_; }
  const CArray& coeffs() const { return coeffs_; }
  /// Coefficient at signed index (j1, j2).
  cplx at(int j1, int j2) const {
    const int n = grid_->n();
    return coeffs_((j1 + n) % n, (j2 + n) % n);
  }

 private:
  GridPtr grid_;
  CArray coeffs_;
};

inline ComplexField to_complex(const RealField& f) {
  return ComplexField(f.grid_ptr(), f.values().cast<cplx>());
}

inline ComplexVectorField to_complex(const RealVectorField& v) {
  return ComplexVectorField(to_complex(v.c1), to_complex(v.c2));
}

inline ComplexField conj(const ComplexField& f) {
  return ComplexField(f.grid_ptr(), f.values().conjugate());
}

}  // namespace css2d

#endif  // CSS2D_FIELD_HPP
