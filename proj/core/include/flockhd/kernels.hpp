#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace flockhd {

enum class KernelFamily { PowerLaw, Tabulated };

// Tail behavior of ∫^∞ phi(r) dr. A finite table cannot decide its own tail,
// so that case is reported explicitly instead of guessing.
enum class KernelTail { Divergent, Convergent, Undecidable };

// Influence function phi: nonincreasing, Lipschitz, phi(0) = 1.
//
// Immutable after construction; safe to share across threads.
class InfluenceKernel {
 public:
  // phi(r) = (1+r)^(-alpha), alpha > 0. Lipschitz constant alpha.
  static InfluenceKernel power_law(double alpha);

  // Piecewise-linear table on an increasing radius grid starting at 0 with
  // phi(0) = 1. The table must be nonincreasing and nonnegative; values are
  // held constant beyond the last node. Rejects invalid tables.
  static InfluenceKernel tabulated(std::vector<double> r, std::vector<double> phi);

  // phi(r). Throws std::domain_error for r < 0.
  double operator()(double r) const;

  // phi'(r). Analytic for the power law; segment slopes (one-sided at nodes)
  // for tables, 0 beyond the table.
  double derivative(double r) const;

  double lipschitz() const { return lip_; }
  KernelFamily family() const { return family_; }
  double alpha() const;

  KernelTail tail() const;

  // ∫_0^t phi(s) ds, strictly increasing while phi > 0.
  double primitive(double t) const;

  // ∫_s^∞ phi(r) dr; +inf when the tail diverges.
  // Throws std::logic_error for tables (tail undecidable).
  double tail_integral_from(double s) const;

  // Fused (phi, phi') without argument validation; hot path of the pairwise
  // interaction loops. For the power law phi' = -alpha phi / (1+r), with
  // sqrt-based shortcuts for the common exponents.
  void pair_eval(double r, double& phi, double& dphi) const {
    if (family_ == KernelFamily::PowerLaw) {
      const double b = 1.0 + r;
      if (alpha_ == 0.5) {
        phi = 1.0 / std::sqrt(b);
      } else if (alpha_ == 1.0) {
        phi = 1.0 / b;
      } else if (alpha_ == 1.5) {
        phi = 1.0 / (b * std::sqrt(b));
      } else if (alpha_ == 2.0) {
        phi = 1.0 / (b * b);
      } else {
        phi = std::pow(b, -alpha_);
      }
      dphi = -alpha_ * phi / b;
    } else {
      phi = (*this)(r);
      dphi = derivative(r);
    }
  }

 private:
  InfluenceKernel() = default;

  KernelFamily family_ = KernelFamily::PowerLaw;
  double alpha_ = 1.0;
  double lip_ = 1.0;
  std::vector<double> grid_;
  std::vector<double> values_;
  std::vector<double> cum_;  // prefix trapezoid integrals over grid_
};

struct ModelParams {
  enum class Model { CS, MT };

  Model model = Model::CS;
  double mass = 1.0;  // total mass carried by the ensemble, > 0
  InfluenceKernel kernel = InfluenceKernel::power_law(0.5);

  // Interaction bound entering every flocking estimate: the total mass for
  // the symmetric model, exactly 1 for the normalized one.
  double interaction_bound() const { return model == Model::MT ? 1.0 : mass; }
};

ModelParams make_model(ModelParams::Model model, double mass, InfluenceKernel kernel);

// psi(t) = m ∫_0^t phi(s) ds with m the interaction bound.
double psi(const ModelParams& p, double t);

// Inverse of psi by bracketed bisection (bracket grown by doubling, relative
// tolerance 1e-12). Throws std::domain_error if psi saturates below target.
double psi_inverse(const ModelParams& p, double target);

// Flocking diameter D solving psi(D) = V0 + psi(S0).
// Requires a divergent tail or V0 < m ∫_{S0}^∞ phi; otherwise throws
// std::domain_error("no flocking guarantee ...").
double flock_diameter(const ModelParams& p, double S0, double V0);

}  // namespace flockhd
