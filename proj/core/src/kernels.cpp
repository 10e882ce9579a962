#include "flockhd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace flockhd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

InfluenceKernel InfluenceKernel::power_law(double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0, "power-law kernel needs alpha > 0");
  InfluenceKernel k;
  k.family_ = KernelFamily::PowerLaw;
  k.alpha_ = alpha;
  k.lip_ = alpha;  // sup |phi'| attained at r = 0
  return k;
}

InfluenceKernel InfluenceKernel::tabulated(std::vector<double> r, std::vector<double> phi) {
  require(r.size() == phi.size(), "tabulated kernel: grid/value size mismatch");
  require(r.size() >= 2, "tabulated kernel: need at least two nodes");
  require(r.front() == 0.0, "tabulated kernel: grid must start at r = 0");
  require(phi.front() == 1.0, "tabulated kernel: phi(0) must equal 1");
  double lip = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    require(std::isfinite(r[i]) && std::isfinite(phi[i]), "tabulated kernel: non-finite entry");
    require(phi[i] >= 0.0, "tabulated kernel: phi must be nonnegative");
    if (i > 0) {
      require(r[i] > r[i - 1], "tabulated kernel: grid must be strictly increasing");
      require(phi[i] <= phi[i - 1], "tabulated kernel: phi must be nonincreasing");
      lip = std::max(lip, (phi[i - 1] - phi[i]) / (r[i] - r[i - 1]));
    }
  }
  InfluenceKernel k;
  k.family_ = KernelFamily::Tabulated;
  k.lip_ = lip;
  k.grid_ = std::move(r);
  k.values_ = std::move(phi);
  k.cum_.assign(k.grid_.size(), 0.0);
  for (std::size_t i = 1; i < k.grid_.size(); ++i) {
    k.cum_[i] = k.cum_[i - 1] +
                0.5 * (k.values_[i - 1] + k.values_[i]) * (k.grid_[i] - k.grid_[i - 1]);
  }
  return k;
}

double InfluenceKernel::operator()(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("influence kernel: r must be nonnegative");
  if (family_ == KernelFamily::PowerLaw) return std::pow(1.0 + r, -alpha_);
  if (r >= grid_.back()) return values_.back();
  auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
  const std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
  const std::size_t lo = hi - 1;
  const double t = (r - grid_[lo]) / (grid_[hi] - grid_[lo]);
  return values_[lo] + t * (values_[hi] - values_[lo]);
}

double InfluenceKernel::derivative(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("influence kernel: r must be nonnegative");
  if (family_ == KernelFamily::PowerLaw) return -alpha_ * std::pow(1.0 + r, -alpha_ - 1.0);
  if (r >= grid_.back()) return 0.0;
  auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
  const std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
  const std::size_t lo = hi == 0 ? 0 : hi - 1;
  return (values_[hi] - values_[lo]) / (grid_[hi] - grid_[lo]);
}

double InfluenceKernel::alpha() const {
  if (family_ != KernelFamily::PowerLaw)
    throw std::logic_error("alpha() is meaningful only for power-law kernels");
  return alpha_;
}

KernelTail InfluenceKernel::tail() const {
  if (family_ == KernelFamily::Tabulated) return KernelTail::Undecidable;
  return alpha_ <= 1.0 ? KernelTail::Divergent : KernelTail::Convergent;
}

double InfluenceKernel::primitive(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("influence kernel: t must be nonnegative");
  if (family_ == KernelFamily::PowerLaw) {
    if (alpha_ == 1.0) return std::log1p(t);
    return (std::pow(1.0 + t, 1.0 - alpha_) - 1.0) / (1.0 - alpha_);
  }
  if (t >= grid_.back()) return cum_.back() + values_.back() * (t - grid_.back());
  auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
  const std::size_t lo = hi - 1;
  const double phi_t = (*this)(t);
  return cum_[lo] + 0.5 * (values_[lo] + phi_t) * (t - grid_[lo]);
}

double InfluenceKernel::tail_integral_from(double s) const {
  if (!(s >= 0.0)) throw std::domain_error("influence kernel: s must be nonnegative");
  switch (tail()) {
    case KernelTail::Divergent:
      return kInf;
    case KernelTail::Convergent:
      // ∫_s^∞ (1+r)^(-alpha) dr, alpha > 1
      return std::pow(1.0 + s, 1.0 - alpha_) / (alpha_ - 1.0);
    case KernelTail::Undecidable:
    default:
      throw std::logic_error("tail integral undecidable from a finite table");
  }
}

ModelParams make_model(ModelParams::Model model, double mass, InfluenceKernel kernel) {
  require(std::isfinite(mass) && mass > 0.0, "model params: mass must be positive");
  ModelParams p;
  p.model = model;
  p.mass = mass;
  p.kernel = std::move(kernel);
  return p;
}

double psi(const ModelParams& p, double t) {
  return p.interaction_bound() * p.kernel.primitive(t);
}

double psi_inverse(const ModelParams& p, double target) {
  if (!(target >= 0.0)) throw std::domain_error("psi_inverse: target must be nonnegative");
  if (target == 0.0) return 0.0;
  double hi = 1.0;
  int grow = 0;
  while (psi(p, hi) < target) {
    hi *= 2.0;
    if (++grow > 600) throw std::domain_error("psi_inverse: psi saturates below target");
  }
  double lo = 0.0;
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (psi(p, mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double flock_diameter(const ModelParams& p, double S0, double V0) {
  if (!(S0 >= 0.0) || !(V0 >= 0.0))
    throw std::domain_error("flock_diameter: S0, V0 must be nonnegative");
  if (V0 == 0.0) return S0;

  const double m = p.interaction_bound();
  switch (p.kernel.tail()) {
    case KernelTail::Divergent:
      break;
    case KernelTail::Convergent:
      if (!(V0 < m * p.kernel.tail_integral_from(S0)))
        throw std::domain_error(
            "no flocking guarantee: integrable kernel with V0 >= m*int_{S0}^inf phi");
      break;
    case KernelTail::Undecidable:
      // Constant extrapolation of the last table value: psi keeps growing iff
      // that value is positive; the bracket search below detects saturation.
      break;
  }

  const double target = V0 + psi(p, S0);
  double hi = std::max(2.0 * S0, 1.0);
  int grow = 0;
  while (psi(p, hi) < target) {
    hi *= 2.0;
    if (++grow > 600)
      throw std::domain_error("no flocking guarantee: psi saturates below V0 + psi(S0)");
  }
  double lo = S0;
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (psi(p, mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace flockhd
