#pragma once

#include <functional>
#include <vector>

#include "rotor/wave_field.hpp"

namespace rotor {

/// Objective F on the mass sphere S(c). Returns F(u) and writes the L^2
/// gradient g, normalized so that dF(u)[phi] = 2 Re <g, phi>.
using SphereObjective = std::function<double(const WaveField& u, WaveField& gradient)>;

struct DescentOptions {
  double mass = 1.0;
  /// Stop when residual() <= tol.
  double tol = 1e-8;
  int max_iters = 5000;
  /// First trial arc length, relative to sqrt(mass).
  double initial_step = 1e-2;
  /// Allowed per-step increase of F, relative to max(1, |F|).
  double monotone_tol = 1e-12;
  /// Shift of the kinetic and trap factors in the preconditioner.
  double shift = 1.0;
  /// Conjugate-direction restart period.
  int restart = 50;
  /// Called after every accepted step; may throw to abort the descent.
  std::function<void(const WaveField& u, double value, int iter)> monitor;
};

struct DescentResult {
  WaveField field;
  double value = 0.0;
  double multiplier = 0.0;  ///< Re <u, g> / c
  double residual = 0.0;
  int iters = 0;
  bool converged = false;
  std::vector<double> history;  ///< F after every accepted step
};

/// Preconditioned nonlinear conjugate gradients on S(c) with great-circle
/// retraction and a secant line search on the slope. The iterate is
/// renormalized to mass c after every step.
DescentResult sphere_descent(WaveField u0, const SphereObjective& objective, const DescentOptions& options);

/// ||(1 - Lap)^{-1/2} r||_2, the H^{-1} norm of a residual field.
double dual_norm(const WaveField& r);

/// Tangent residual g - (Re <u,g>/c) u and its multiplier.
struct TangentResidual {
  WaveField r;
  double multiplier;
};
TangentResidual tangent_residual(const WaveField& u, const WaveField& g);

/// (s + V)^{-1/2} (s - Lap/2)^{-1} (s + V)^{-1/2} with V = |x|^2/2.
WaveField precondition(const WaveField& r, double shift);

}  // namespace rotor
