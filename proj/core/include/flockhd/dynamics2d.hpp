#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "flockhd/dynamics1d.hpp"  // Interval, StepConfig, BlowUpInfo, NumericalFailure
#include "flockhd/kernels.hpp"

namespace flockhd {

// Particle ensemble for the planar system. Each characteristic carries the
// full velocity-gradient matrix M with rows indexed by the velocity component
// (M[a][b] = d u_a / d x_b).
struct Ensemble2D {
  std::vector<double> x1, x2;
  std::vector<double> u1, u2;
  std::vector<double> w;
  std::vector<double> m11, m12, m21, m22;
  std::vector<double> rho;
  double t = 0.0;

  std::size_t size() const { return x1.size(); }
  bool tracer(std::size_t i) const { return w[i] == 0.0; }
  double total_mass() const;
  void momentum(double& p1, double& p2) const;
  double min_divergence() const;  // min_i (m11 + m22)
  void check_consistent() const;
};

// Componentwise alignment accelerations (Euclidean distance in phi).
void velocity_rhs_2d(const Ensemble2D& ens, const ModelParams& model, std::vector<double>& du1,
                     std::vector<double>& du2);

// Matrix dynamics along characteristics:
//   M' = -M^2 + sum_j w_j (u_j - u_i) (x) grad phi(|x_i - x_j|) - M sum_j w_j phi_ij,
// with M^2 the literal matrix square and grad phi = phi'(r) (x_i - x_j)/r
// (zero vector at coincident points). The normalized model differentiates
// phi/Phi instead.
void gradient_rhs_2d(const Ensemble2D& ens, const ModelParams& model, std::vector<double>& dm11,
                     std::vector<double>& dm12, std::vector<double>& dm21,
                     std::vector<double>& dm22);

// Per-particle scalar decomposition of M: divergence d, trace gap q, shears
// r, s, and the signed squared spectral gap eta2 = q^2 + 4 r s (negative for
// complex eigenvalues).
struct DqrsDiagnostics {
  std::vector<double> d, q, r, s, eta2;
};

DqrsDiagnostics dqrs_diagnostics(const Ensemble2D& ens);

struct Support2D {
  enum class Shape { Rectangle, Disk };
  Shape shape = Shape::Rectangle;
  Interval x1{-0.5, 0.5};
  Interval x2{-0.5, 0.5};  // disk: bounding box, must be square

  double area() const;
  bool contains(double a, double b) const;
};

// Velocity field u = (d0/2) x + (g(x2), h(x1)) with plateau shear bands of
// height B0/2 through the support center: divergence d0 everywhere, trace gap
// 0, off-trace measure max{|q|, 2|r|, 2|s|} exactly B0 with r s > 0 where the
// bands overlap. The band amplitude is solved so the velocity diameter over
// the support is exactly V0. Throws std::invalid_argument when (V0, d0, B0)
// cannot be realized (V0 below the affine floor |d0|/2 diam(support), or the
// bands would not fit).
//
// N is the requested particle count; the actual count is the nearest full
// grid (n x n over the rectangle, grid points inside the disk).
Ensemble2D initial_data_2d(double V0, double d0, double B0, const Support2D& support,
                           std::size_t N, double mass = 1.0);

// As the 1D step with matrix state; blow-up when min divergence crosses
// -blowup_cutoff, crossing time refined by bisection over the last step.
std::optional<BlowUpInfo> step_2d(Ensemble2D& ens, const ModelParams& model,
                                  const StepConfig& cfg);

// Optional audit of the divergence dynamics: integrates, with the same RK4
// stages as the matrix update, the scalar form
//   d' = -(d^2 + eta^2)/2 - p d + tr Q
// evaluated from the (d, q, r, s) extraction at every stage, so drift of
// d_audit against tr M measures the consistency of the scalar reduction.
struct TraceAudit {
  std::vector<double> d_audit;
};

std::optional<BlowUpInfo> step_2d(Ensemble2D& ens, const ModelParams& model,
                                  const StepConfig& cfg, TraceAudit* audit);

struct RunOutcome2D {
  std::optional<BlowUpInfo> blowup;
};

RunOutcome2D run_2d(Ensemble2D& ens, const ModelParams& model, const RunOptions& opt,
                    const std::function<void(const Ensemble2D&)>& on_record = nullptr);

}  // namespace flockhd
