#pragma once

namespace rotor {

/// Model coefficients: spatial dimension N, interaction strength a,
/// nonlinearity exponent p and rotation speed |Omega|.
struct PhysicsParams {
  int dim = 3;
  double a = 1.0;
  double p = 4.0;
  double omega_mag = 0.0;

  /// delta_p = N(p-2)/(2p); recomputed on every call.
  double delta_p() const { return dim * (p - 2.0) / (2.0 * p); }
  /// p * delta_p, the dilation exponent of ||u||_p^p.
  double p_delta() const { return p * delta_p(); }
  /// Mass-critical exponent 2 + 4/N.
  double critical_p() const { return 2.0 + 4.0 / dim; }
  bool supercritical() const { return p_delta() > 2.0 + 1e-12; }
};

/// Validated constructor. Requires N in {2,3}, a >= 0, |Omega| in [0,1)
/// and 2 + 4/N <= p < 2N/(N-2) (p <= 10 when N = 2).
PhysicsParams make_physics(int dim, double a, double p, double omega_mag);

}  // namespace rotor
