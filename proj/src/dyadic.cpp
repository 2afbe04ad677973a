#include "css2d/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>

#include "css2d/spectral.hpp"

namespace css2d {

namespace {

double smooth_h(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

RArray bump_on_grid(const Grid& g, double scale) {
  const StandardBump bump;
  return g.xi_abs().unaryExpr([&](double r) { return bump(r / scale); });
}

}  // namespace

double StandardBump::operator()(double r) const {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double t = r - 1.0;
  const double a = smooth_h(1.0 - t);
  return a / (smooth_h(t) + a);
}

StandardBump make_standard_phi1() { return {}; }

DyadicLadder::DyadicLadder(GridPtr grid) : grid_(std::move(grid)) {
  for (double lambda = 1.0; lambda <= grid_->lambda_max(); lambda *= 2.0) bands_.push_back(lambda);
  band_.reserve(bands_.size());
  RArray previous = bump_on_grid(*grid_, 1.0);
  band_.push_back(previous);
  for (std::size_t k = 1; k < bands_.size(); ++k) {
    RArray current = bump_on_grid(*grid_, bands_[k]);
    band_.push_back(current - previous);
    previous = std::move(current);
  }
}

std::shared_ptr<const DyadicLadder> DyadicLadder::for_grid(const GridPtr& grid) {
  static std::mutex m;
  static std::map<const Grid*, std::weak_ptr<const DyadicLadder>> cache;
  std::lock_guard lock(m);
  auto& slot = cache[grid.get()];
  if (auto existing = slot.lock(); existing && existing->grid_ptr() == grid) return existing;
  auto fresh = std::make_shared<const DyadicLadder>(grid);
  slot = fresh;
  return fresh;
}

std::size_t DyadicLadder::band_index(double lambda) const {
  const auto it = std::find(bands_.begin(), bands_.end(), lambda);
  if (it == bands_.end())
    throw ConfigError("frequency " + std::to_string(lambda) + " is not a band of this ladder");
  return static_cast<std::size_t>(it - bands_.begin());
}

bool DyadicLadder::contains(double lambda) const {
  return std::find(bands_.begin(), bands_.end(), lambda) != bands_.end();
}

RArray DyadicLadder::leq_multiplier(double mu) const {
  const int n = grid_->n();
  if (mu < 1.0) return RArray::Zero(n, n);
  return bump_on_grid(*grid_, mu);
}

RArray DyadicLadder::cumulative_multiplier(double lambda) const {
  const int n = grid_->n();
  RArray sum = RArray::Zero(n, n);
  for (std::size_t k = 0; k < bands_.size() && bands_[k] <= lambda; ++k) sum += band_[k];
  return sum;
}

ComplexField band_project(const DyadicLadder& ladder, const ComplexField& u, double lambda) {
  return apply_symbol(u, ladder.band_multiplier(lambda));
}

ComplexField project_leq(const DyadicLadder& ladder, const ComplexField& u, double lambda) {
  return apply_symbol(u, ladder.leq_multiplier(lambda));
}

ComplexField project_lt(const DyadicLadder& ladder, const ComplexField& u, double lambda) {
  return apply_symbol(u, ladder.leq_multiplier(lambda / 2.0));
}

std::vector<double> band_norms(const DyadicLadder& ladder, const ComplexField& u) {
  const SpectralField s = to_spectral(u);
  const RArray power = s.coeffs().abs2();
  const double l2 = u.grid().length() * u.grid().length();
  std::vector<double> out(ladder.size());
  for (std::size_t k = 0; k < ladder.size(); ++k)
    out[k] = std::sqrt((ladder.band_multiplier_at(k).square() * power).sum() / l2);
  return out;
}

SobolevWeight::SobolevWeight(std::vector<double> bands, std::vector<double> values)
    : bands_(std::move(bands)), values_(std::move(values)) {
  if (bands_.size() != values_.size() || bands_.empty())
    throw ConfigError("weight table needs matching, nonempty band and value lists");
  for (double v : values_)
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("Sobolev weights must be positive and finite");
}

SobolevWeight SobolevWeight::power(const DyadicLadder& ladder, double s) {
  std::vector<double> values;
  for (double lambda : ladder.bands()) values.push_back(std::pow(lambda, s));
  return SobolevWeight(ladder.bands(), std::move(values));
}

double SobolevWeight::operator()(double lambda) const {
  const auto it = std::find(bands_.begin(), bands_.end(), lambda);
  if (it == bands_.end()) throw ConfigError("weight is not defined at " + std::to_string(lambda));
  return values_[static_cast<std::size_t>(it - bands_.begin())];
}

void SobolevWeight::write_table(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write weight table " + path.string());
  out << std::setprecision(17);
  for (std::size_t k = 0; k < bands_.size(); ++k) out << bands_[k] << ' ' << values_[k] << '\n';
}

SobolevWeight SobolevWeight::read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read weight table " + path.string());
  std::vector<double> bands, values;
  double lambda = 0.0, m = 0.0;
  while (in >> lambda >> m) {
    bands.push_back(lambda);
    values.push_back(m);
  }
  return SobolevWeight(std::move(bands), std::move(values));
}

WeightCharacteristics weight_char(const SobolevWeight& m) {
  const auto& v = m.values();
  if (v.size() < 2) throw ConfigError("weight characteristics need at least two bands");
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const double r = std::log2(v[k + 1] / v[k]);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi, std::max(-lo, hi)};
}

double sobolev_norm(const DyadicLadder& ladder, const ComplexField& u, const SobolevWeight& m) {
  if (m.bands().size() < ladder.size()) throw ConfigError("weight does not cover every ladder band");
  const auto norms = band_norms(ladder, u);
  double sum = 0.0;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    const double w = m(ladder.bands()[k]);
    sum += w * w * norms[k] * norms[k];
  }
  return std::sqrt(sum);
}

double sobolev_norm(const DyadicLadder& ladder, const ComplexField& u, double s) {
  const auto norms = band_norms(ladder, u);
  double sum = 0.0;
  for (std::size_t k = 0; k < ladder.size(); ++k)
    sum += std::pow(ladder.bands()[k], 2.0 * s) * norms[k] * norms[k];
  return std::sqrt(sum);
}

double sobolev_norm(const ComplexField& u, double s) {
  return sobolev_norm(*DyadicLadder::for_grid(u.grid_ptr()), u, s);
}

std::vector<double> hs_tails(const DyadicLadder& ladder, const ComplexField& u, double s) {
  const auto norms = band_norms(ladder, u);
  std::vector<double> tails(ladder.size());
  double acc = 0.0;
  for (std::size_t k = ladder.size(); k-- > 0;) {
    acc += std::pow(ladder.bands()[k], 2.0 * s) * norms[k] * norms[k];
    tails[k] = std::sqrt(acc);
  }
  return tails;
}

SobolevWeight build_compactness_weight(const DyadicLadder& ladder, const std::vector<ComplexField>& family,
                                       double s) {
  if (family.empty()) throw ConfigError("compactness weight needs a nonempty family");
  std::vector<double> sup_tail(ladder.size(), 0.0);
  for (const auto& w : family) {
    if (!w.all_finite()) throw NonFiniteField("compactness family");
    const auto tails = hs_tails(ladder, w, s);
    for (std::size_t k = 0; k < tails.size(); ++k) sup_tail[k] = std::max(sup_tail[k], tails[k]);
  }
  // the full tail at band 1 is the H^s norm itself
  const double sup_norm = sup_tail[0];
  if (!(sup_norm > 0.0)) throw ConfigError("compactness weight family consists of zero fields");
  for (double& t : sup_tail) t /= sup_norm;

  // level[k] = m with nu_m <= band k < nu_{m+1}
  std::vector<int> level(ladder.size(), 0);
  std::size_t nu = 0;
  int m = 0;
  for (;;) {
    const double target = std::ldexp(1.0, -(m + 1));
    std::size_t next = nu + 1;
    while (next < ladder.size() && sup_tail[next] > target) ++next;
    if (next >= ladder.size()) break;
    ++m;
    for (std::size_t k = next; k < ladder.size(); ++k) level[k] = m;
    nu = next;
  }

  std::vector<double> values;
  for (std::size_t k = 0; k < ladder.size(); ++k)
    values.push_back(std::exp2(level[k] / 8.0) * std::pow(ladder.bands()[k], s));
  return SobolevWeight(ladder.bands(), std::move(values));
}

}  // namespace css2d
