#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace flockhd {

// Small fixed-size ODE states (majorant systems, comparison trials).
// The N-body steppers in dynamics1d/2d have their own fused RK4 loops.

// One classic RK4 step of y' = f(t, y) for std::array states.
template <std::size_t N, typename F>
std::array<double, N> rk4_step(F&& f, double t, const std::array<double, N>& y, double dt) {
  std::array<double, N> k1 = f(t, y);
  std::array<double, N> tmp;
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
  std::array<double, N> k2 = f(t + 0.5 * dt, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
  std::array<double, N> k3 = f(t + 0.5 * dt, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + dt * k3[i];
  std::array<double, N> k4 = f(t + dt, tmp);
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

struct AdaptiveOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double min_step_factor = 1e-14;  // vs. the integration span
  double value_cap = 1e12;         // |y| above this counts as escape
};

enum class StepStatus { Ok, Escaped, StepUnderflow };

// Adaptive scalar Dormand-Prince 5(4). Integrates y' = f(x, y) from x0 to x1,
// adjusting the step from the embedded error estimate. Returns the status and
// leaves (x, y) at the furthest accepted point.
class DormandPrince45 {
 public:
  explicit DormandPrince45(AdaptiveOptions opt = {}) : opt_(opt) {}

  template <typename F>
  StepStatus integrate(F&& f, double& x, double& y, double x1) {
    const double span = std::abs(x1 - x);
    if (span == 0.0) return StepStatus::Ok;
    const double hmin = opt_.min_step_factor * std::max(span, std::abs(x1));
    double h = h_hint_ > 0.0 ? std::min(h_hint_, span) : span / 16.0;
    while (x < x1) {
      if (std::abs(y) > opt_.value_cap) return StepStatus::Escaped;
      h = std::min(h, x1 - x);
      double y5, err;
      dp_step(f, x, y, h, y5, err);
      const double tol = opt_.abs_tol + opt_.rel_tol * std::max(std::abs(y), std::abs(y5));
      if (err <= tol || h <= hmin) {
        if (err > tol && h <= hmin) return StepStatus::StepUnderflow;
        x += h;
        y = y5;
        if (!std::isfinite(y)) return StepStatus::Escaped;
      }
      const double safety = 0.9;
      double scale = err > 0.0 ? safety * std::pow(tol / err, 0.2) : 5.0;
      scale = std::min(5.0, std::max(0.2, scale));
      h = std::max(h * scale, hmin);
      h_hint_ = h;
    }
    return StepStatus::Ok;
  }

 private:
  template <typename F>
  static void dp_step(F&& f, double x, double y, double h, double& y5, double& err) {
    // Dormand-Prince coefficients (FSAL pair, used in one-shot form).
    const double k1 = f(x, y);
    const double k2 = f(x + h / 5.0, y + h * (k1 / 5.0));
    const double k3 = f(x + 3.0 * h / 10.0, y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
    const double k4 = f(x + 4.0 * h / 5.0,
                        y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
    const double k5 = f(x + 8.0 * h / 9.0,
                        y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                                 64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4));
    const double k6 = f(x + h, y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 +
                                        46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4 -
                                        5103.0 / 18656.0 * k5));
    y5 = y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 -
                  2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
    const double k7 = f(x + h, y5);
    const double y4 = y + h * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 +
                               393.0 / 640.0 * k4 - 92097.0 / 339200.0 * k5 +
                               187.0 / 2100.0 * k6 + 1.0 / 40.0 * k7);
    err = std::abs(y5 - y4);
  }

  AdaptiveOptions opt_;
  double h_hint_ = -1.0;
};

}  // namespace flockhd
