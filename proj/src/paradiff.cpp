#include "css2d/paradiff.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "css2d/gauge.hpp"
#include "css2d/spectral.hpp"

namespace css2d {

namespace {

const cplx I(0.0, 1.0);

// Unnormalised transforms; every band sum is assembled in Fourier space and
// inverted once at the end.
CArray fwd(const Grid& g, const CArray& u) {
  CArray out(g.n(), g.n());
  g.fft_forward(u.data(), out.data());
  return out;
}

CArray bwd(const Grid& g, const CArray& u) {
  CArray out(g.n(), g.n());
  g.fft_backward(u.data(), out.data());
  return out / static_cast<double>(g.n() * g.n());
}

struct Prepared {
  CArray b_hat[2];
  CArray grad_hat[2];
  CArray grad[2];
};

Prepared prepare(const Grid& g, const ComplexVectorField& b, const ComplexField& w) {
  Prepared p;
  const CArray w_hat = fwd(g, w.values());
  p.b_hat[0] = fwd(g, b.c1.values());
  p.b_hat[1] = fwd(g, b.c2.values());
  p.grad_hat[0] = I * g.derivative_symbol(Axis::One).cast<cplx>() * w_hat;
  p.grad_hat[1] = I * g.derivative_symbol(Axis::Two).cast<cplx>() * w_hat;
  p.grad[0] = bwd(g, p.grad_hat[0]);
  p.grad[1] = bwd(g, p.grad_hat[1]);
  return p;
}

// One band term: D(c . S grad w) + T D(c . grad w), with c the projected
// coefficient and S, T the multipliers of the two halves. Returned in
// unnormalised Fourier space.
CArray band_term(const Grid& g, const Prepared& p, const RArray& coeff_sym, const RArray& inner_sym,
                 const RArray& outer_sym) {
  const CArray c1 = bwd(g, coeff_sym.cast<cplx>() * p.b_hat[0]);
  const CArray c2 = bwd(g, coeff_sym.cast<cplx>() * p.b_hat[1]);
  const CArray v1 = bwd(g, inner_sym.cast<cplx>() * p.grad_hat[0]);
  const CArray v2 = bwd(g, inner_sym.cast<cplx>() * p.grad_hat[1]);
  const RArray& mask = g.dealias_mask();
  const CArray first = fwd(g, c1 * v1 + c2 * v2);
  const CArray second = fwd(g, c1 * p.grad[0] + c2 * p.grad[1]);
  return mask.cast<cplx>() * (first + outer_sym.cast<cplx>() * second);
}

}  // namespace

ParaproductPlan::ParaproductPlan(std::shared_ptr<const DyadicLadder> ladder) : ladder_(std::move(ladder)) {
  for (double lambda : ladder_->bands()) {
    // the inhomogeneous ladder has no band below 1, so P_{<= lambda/32} = 0 for lambda < 32
    const bool nonempty = low_cut(lambda) >= 1.0;
    has_low_.push_back(nonempty);
    low_.push_back(ladder_->leq_multiplier(nonempty ? low_cut(lambda) : 0.0));
    high_.push_back(ladder_->leq_multiplier(high_cut(lambda)));
  }
}

std::shared_ptr<const ParaproductPlan> ParaproductPlan::for_grid(const GridPtr& grid) {
  static std::mutex m;
  static std::map<const Grid*, std::weak_ptr<const ParaproductPlan>> cache;
  std::lock_guard lock(m);
  auto& slot = cache[grid.get()];
  if (auto existing = slot.lock(); existing && existing->ladder().grid_ptr() == grid) return existing;
  auto fresh = std::make_shared<const ParaproductPlan>(DyadicLadder::for_grid(grid));
  slot = fresh;
  return fresh;
}

ComplexField frak_p(const ComplexVectorField& b, const ComplexField& w) {
  b.c1.require_same_grid(w);
  const auto plan_ptr = ParaproductPlan::for_grid(w.grid_ptr());
  const ParaproductPlan& plan = *plan_ptr;
  const Grid& g = w.grid();
  const Prepared p = prepare(g, b, w);
  CArray acc = CArray::Zero(g.n(), g.n());
  for (std::size_t k = 0; k < plan.ladder().size(); ++k) {
    if (!plan.has_low(k)) continue;
    const RArray& band = plan.ladder().band_multiplier_at(k);
    acc += band_term(g, p, plan.low(k), band, band);
  }
  return ComplexField(w.grid_ptr(), bwd(g, acc));
}

ComplexField frak_p(const RealVectorField& b, const ComplexField& w) { return frak_p(to_complex(b), w); }

ComplexField frak_q(const ComplexVectorField& b, const ComplexField& w) {
  b.c1.require_same_grid(w);
  const auto plan_ptr = ParaproductPlan::for_grid(w.grid_ptr());
  const ParaproductPlan& plan = *plan_ptr;
  const Grid& g = w.grid();
  const Prepared p = prepare(g, b, w);
  CArray acc = CArray::Zero(g.n(), g.n());
  for (std::size_t k = 0; k < plan.ladder().size(); ++k)
    acc += band_term(g, p, plan.ladder().band_multiplier_at(k), plan.high(k), plan.high(k));
  return ComplexField(w.grid_ptr(), bwd(g, acc));
}

ComplexField frak_q(const RealVectorField& b, const ComplexField& w) { return frak_q(to_complex(b), w); }

double partition_residual(const RealVectorField& b, const ComplexField& w) {
  const ComplexVectorField gw = gradient(w);
  const CArray direct = 2.0 * (b.c1.values().cast<cplx>() * gw.c1.values() +
                               b.c2.values().cast<cplx>() * gw.c2.values());
  const CArray split = (frak_p(b, w) + frak_q(b, w)).values();
  const double gsup = std::sqrt((gw.c1.values().abs2() + gw.c2.values().abs2()).maxCoeff());
  const double scale = linf_norm(b) * gsup;
  const double res = (split - direct).abs().maxCoeff();
  return scale > 0.0 ? res / scale : res;
}

ComplexField q_trilinear(const ComplexField& u1, const ComplexField& u2, const ComplexField& u3) {
  return frak_q(n2x(u1, u2), u3);
}

}  // namespace css2d
