#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flockhd/kernels.hpp"

namespace flockhd {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Mass-weighted characteristic particles of the 1D alignment system. Each
// characteristic carries position, velocity, the velocity slope e = u_x along
// the path, and the density. Zero-mass entries are vacuum tracers: they ride
// the same ODEs but contribute nothing to the interaction sums.
struct Ensemble1D {
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> w;       // masses, never mutated by stepping
  std::vector<double> e;       // u_x along the characteristic
  std::vector<double> rho;     // density along the characteristic
  std::vector<double> offset;  // seeding distance to the initial support (0 = massive)
  double t = 0.0;

  std::size_t size() const { return x.size(); }
  bool tracer(std::size_t i) const { return w[i] == 0.0; }
  double total_mass() const;
  double momentum() const;  // sum w u
  double min_slope() const;
  void check_consistent() const;
};

struct StepConfig {
  double dt_base = 1e-3;
  double blowup_cutoff = 1e6;
  bool adaptive = true;
};

struct BlowUpInfo {
  double t_c = 0.0;
  std::size_t index = 0;
  double x = 0.0;
};

struct NumericalFailure : std::runtime_error {
  NumericalFailure(const std::string& msg, double t)
      : std::runtime_error(msg), t_last(t) {}
  double t_last;
};

// Alignment accelerations: a_i = sum_j w_j phi(|x_i-x_j|)(u_j - u_i), divided
// by Phi_i = sum_j w_j phi(|x_i-x_j|) for the normalized model. Throws
// std::domain_error when a normalization Phi_i vanishes.
void velocity_rhs(const Ensemble1D& ens, const ModelParams& model, std::vector<double>& du);

// Slope dynamics along characteristics:
//   e' = -e^2 - e sum_j w_j phi_ij + sum_j w_j phi'_ij sgn(x_i-x_j)(u_j-u_i)
// for the symmetric model; the normalized model differentiates phi/Phi.
void slope_rhs(const Ensemble1D& ens, const ModelParams& model, std::vector<double>& de);

// Continuity along characteristics: rho' = -rho e.
void density_rhs(const Ensemble1D& ens, std::vector<double>& drho);

// One explicit 4-stage (RK4) step of (x, u, e, rho) in place. When adaptive,
// dt = min(dt_base, 0.1 / max(1, |min e|)). Returns blow-up info once min e
// crosses -blowup_cutoff; the crossing time is refined by bisection over the
// last step. Throws NumericalFailure if the state leaves the finite range.
std::optional<BlowUpInfo> step(Ensemble1D& ens, const ModelParams& model, const StepConfig& cfg);

// Velocity profiles used to build initial data and to carry (u, e) data onto
// tracers; constant extension outside the defining window.
class VelocityProfile1D {
 public:
  static VelocityProfile1D piecewise_linear(std::vector<double> xs, std::vector<double> us);
  // Half-cosine descent of amplitude V0/2 over wavelength lambda starting at
  // window_lo; constant on either side.
  static VelocityProfile1D cosine_ramp(double window_lo, double lambda, double amplitude);

  double value(double x) const;
  double slope(double x) const;

 private:
  VelocityProfile1D() = default;
  bool cosine_ = false;
  double lo_ = 0.0, lambda_ = 1.0, amp_ = 0.0;
  std::vector<double> xs_, us_;
};

enum class Profile1D { NShape, Sine };

// Continuum profile with velocity diameter exactly V0 and minimum slope
// exactly d0 on the support. Throws std::invalid_argument on infeasible
// (V0, d0, support): a slope-d0 descent must fit the support when d0 < 0
// (width V0/|d0| <= |support|) and V0 >= d0 |support| when d0 > 0.
VelocityProfile1D build_profile_1d(double V0, double d0, Interval support, Profile1D kind);

// Uniform density of total mass `mass` on the support, particles at
// mass-equidistributed positions carrying (u, e) from the profile.
Ensemble1D initial_data_1d(double V0, double d0, Interval support, Profile1D kind,
                           std::size_t N, double mass = 1.0);

// Disconnected two-blob density with a linear velocity ramp of the given
// (negative) slope across the span of the blobs, constant outside.
struct TwoBlobSpec {
  Interval left{-1.5, -0.5};
  Interval right{0.5, 1.5};
  double slope = 0.025;  // magnitude of the descending ramp
};

VelocityProfile1D two_blob_profile(const TwoBlobSpec& spec);
Ensemble1D two_blob_data_1d(const TwoBlobSpec& spec, std::size_t N, double mass = 1.0);

// Support intervals of the massive particles, padded by half the local
// spacing; the discrete stand-in for supp(rho).
std::vector<Interval> support_intervals(const Ensemble1D& ens);

// Distance to the discrete support (0 inside).
double distance_to_support(const Ensemble1D& ens, double x);

// Appends zero-mass tracers at every point lying at distance lambda from the
// initial support (both outer sides, and interior gap points when they
// exist), carrying (u, e) initial data from the profile.
void seed_tracers(Ensemble1D& ens, std::span<const double> offsets,
                  const VelocityProfile1D& u0);

struct RunOptions {
  StepConfig solver;
  double t_end = 10.0;
  int record_every = 10;  // steps between record callbacks; 0 and final always fire
};

struct RunOutcome1D {
  std::optional<BlowUpInfo> blowup;
};

// Steps the ensemble to t_end or blow-up, invoking on_record on the cadence.
RunOutcome1D run_1d(Ensemble1D& ens, const ModelParams& model, const RunOptions& opt,
                    const std::function<void(const Ensemble1D&)>& on_record = nullptr);

}  // namespace flockhd
