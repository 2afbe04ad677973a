#include "css2d/grid.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "css2d/error.hpp"

namespace css2d {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

// SIMD plans for arrays with the planner's alignment, plus unaligned
// fallbacks for anything else.
struct Grid::Plans {
  fftw_plan forward = nullptr, backward = nullptr;
  fftw_plan forward_u = nullptr, backward_u = nullptr;
  int alignment = 0;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    for (fftw_plan p : {forward, backward, forward_u, backward_u})
      if (p) fftw_destroy_plan(p);
  }
  bool aligned(const cplx* in, const cplx* out) const {
    return fftw_alignment_of(const_cast<double*>(reinterpret_cast<const double*>(in))) == alignment &&
           fftw_alignment_of(reinterpret_cast<double*>(const_cast<cplx*>(out))) == alignment;
  }
};

GridPtr Grid::create(int n, double length) {
  return GridPtr(new Grid(n, length));
}

Grid::Grid(int n, double length) : n_(n), length_(length) {
  if (!is_power_of_two(n) || n < 8)
    throw ConfigError("grid size must be a power of two >= 8, got " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length))
    throw ConfigError("box length must be positive and finite");

  lambda_max_ = 1.0;
  while (lambda_max_ < nyquist_radius()) lambda_max_ *= 2.0;

  const double k = k0();
  xi1_.resize(n, n);
  xi2_.resize(n, n);
  dsym1_.resize(n, n);
  dsym2_.resize(n, n);
  dealias_mask_.resize(n, n);
  for (int p = 0; p < n; ++p) {
    const int j1 = signed_index(p);
    for (int q = 0; q < n; ++q) {
      const int j2 = signed_index(q);
      xi1_(p, q) = k * j1;
      xi2_(p, q) = k * j2;
      dsym1_(p, q) = (j1 == -n / 2) ? 0.0 : k * j1;
      dsym2_(p, q) = (j2 == -n / 2) ? 0.0 : k * j2;
      const bool keep = 3 * std::abs(j1) <= n && 3 * std::abs(j2) <= n;
      dealias_mask_(p, q) = keep ? 1.0 : 0.0;
    }
  }
  xi_sq_ = xi1_.square() + xi2_.square();
  xi_abs_ = xi_sq_.sqrt();

  plans_ = std::make_unique<Plans>();
  CArray scratch_in = CArray::Zero(n, n);
  CArray scratch_out = CArray::Zero(n, n);
  auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
  auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());
  std::lock_guard lock(planner_mutex());
  plans_->alignment = fftw_alignment_of(reinterpret_cast<double*>(in));
  if (fftw_alignment_of(reinterpret_cast<double*>(out)) == plans_->alignment) {
    plans_->forward = fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    plans_->backward = fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  plans_->forward_u = fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->backward_u = fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Grid::~Grid() = default;

double Grid::k0() const { return 2.0 * std::numbers::pi / length_; }

double Grid::nyquist_radius() const { return std::sqrt(2.0) * k0() * n_ / 2.0; }

void Grid::fft_forward(const cplx* in, cplx* out) const {
  // out-of-place c2c transforms leave the input untouched
  const bool fast = plans_->forward && plans_->aligned(in, out);
  fftw_execute_dft(fast ? plans_->forward : plans_->forward_u,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void Grid::fft_backward(const cplx* in, cplx* out) const {
  const bool fast = plans_->backward && plans_->aligned(in, out);
  fftw_execute_dft(fast ? plans_->backward : plans_->backward_u,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace css2d
