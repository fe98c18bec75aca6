#pragma once

#include <optional>

#include "rotor/physics.hpp"
#include "rotor/wave_field.hpp"

namespace rotor {

/// Components of I(u) = kinetic + trap - nonlinear - rotation, plus the
/// Pohozaev functional and the multiplier estimate.
struct EnergyBreakdown {
  double kinetic = 0.0;    ///< 1/2 ||grad u||^2
  double trap = 0.0;       ///< 1/2 ||x u||^2
  double rotation = 0.0;   ///< int conj(u) (Omega.L) u
  double nonlinear = 0.0;  ///< (2a/p) ||u||_p^p
  double total = 0.0;
  double sigma_dot = 0.0;  ///< ||u||_Sigma-dot^2
  double pohozaev = 0.0;   ///< Q(u)
  double omega_est = 0.0;  ///< Lagrange multiplier estimate
};

/// ||u||_p^p by pointwise quadrature.
double lp_norm_pow(const WaveField& u, double p);

EnergyBreakdown energy(const WaveField& u, const PhysicsParams& params);

/// Q(u) = 1/2 ||grad u||^2 - 1/2 ||x u||^2 - a delta_p ||u||_p^p.
double pohozaev_Q(const WaveField& u, const PhysicsParams& params);

/// omega = (1/c)(1/2 ||u||_Sigma-dot^2 - int conj(u)(Omega.L)u - a ||u||_p^p).
double lagrange_omega(const WaveField& u, const PhysicsParams& params);

/// Energy together with the L^2 gradient field
///   H u = (-1/2 Lap + 1/2 |x|^2 - Omega.L) u - a |u|^{p-2} u,
/// normalized so that dI(u)[phi] = 2 Re <H u, phi>. For even integer p the
/// nonlinear force is filtered with the 2/3 rule.
struct HamiltonianEval {
  EnergyBreakdown energy;
  WaveField h_u;
};
HamiltonianEval apply_hamiltonian(const WaveField& u, const PhysicsParams& params);

/// Multipliers of the kinetic, trap and nonlinear terms. With
/// (e^{2 theta}, e^{-2 theta}, e^{p delta_p theta}) the weighted energy is
/// I(kappa(u, theta)) evaluated without resampling.
struct TermWeights {
  double kinetic = 1.0;
  double trap = 1.0;
  double nonlinear = 1.0;
};
/// Weighted total in energy.total (other components unweighted) and the
/// matching gradient field.
HamiltonianEval apply_hamiltonian(const WaveField& u, const PhysicsParams& params, const TermWeights& weights);

struct GnCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};
/// ||u||_p <= C ||grad u||^{delta_p} ||u||_2^{1-delta_p}.
GnCheck gn_check(const WaveField& u, const PhysicsParams& params, double gn_const);

struct RotationChain {
  double lhs = 0.0;
  double mid = 0.0;
  double rhs = 0.0;
  bool holds = true;
};
/// |<u,(Omega.L)u>| <= ||(Omega ^ x)u|| ||grad u|| <= |Omega|^2/(2 eps) ||xu||^2 + eps/2 ||grad u||^2
RotationChain rotation_interpolation_check(const WaveField& u, double omega_mag, double eps);

/// 1/2 ||u||_Sigma-dot^2 - int conj(u)(Omega.L)u
double norm_omega1(const WaveField& u, double omega_mag);
/// (1/2 - 1/(p delta_p)) ||grad u||^2 + (1/2 + 1/(p delta_p)) ||xu||^2 - int conj(u)(Omega.L)u.
/// Throws ValidationError unless p delta_p > 2.
double norm_omega2(const WaveField& u, const PhysicsParams& params);

/// Closed-form constants of the local-minimum geometry and of the
/// small-mass asymptotics.
struct RotationConstants {
  double nu = 0.0;
  double mu = 0.0;
  double eps0 = 0.0;
  double c_star = 0.0;
  double c_upper = 0.0;
  std::optional<double> eps1;
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<double> c_omega;
  double c0 = 0.0;
  double gn_const = 0.0;
};

/// Requires r > 0, gn_const > 0 and |Omega| in (0,1). eps1, c1, c2 and
/// c_omega are left empty unless p delta_p > 2 and
/// |Omega| < sqrt(1 - (2/(p delta_p))^2).
RotationConstants compute_constants(const PhysicsParams& params, double r, double gn_const);

/// Whether the frequency condition |Omega| < sqrt(1 - (2/(p delta_p))^2) holds.
bool frequency_condition(const PhysicsParams& params);

/// Lower bound N (C_* - a C^p r^{(p delta_p - 2)/2} c^{p(1-delta_p)/2}) on omega_c.
double omega_lower_bound(const PhysicsParams& params, const RotationConstants& k, double r, double c);

/// u_tau(x) = tau^{N/2} u(tau x) by band-limited interpolation. Throws
/// NumericalError("tail_leak") when the relative mass change exceeds
/// `leak_tol` (mass pushed past the box or compressed below grid resolution).
WaveField dilate(const WaveField& u, double tau, double leak_tol = 1e-8);
/// kappa(u, theta) = e^{N theta/2} u(e^theta x).
WaveField kappa(const WaveField& u, double theta, double leak_tol = 1e-8);

/// Norms of u that determine I along its dilation orbit.
struct DilationNorms {
  double grad_sq = 0.0;
  double x_sq = 0.0;
  double lp_pow = 0.0;
  double rotation = 0.0;
};
DilationNorms dilation_norms(const WaveField& u, const PhysicsParams& params);

/// I(kappa(u, theta)) from the undilated norms.
double tilde_I(const DilationNorms& norms, double theta, const PhysicsParams& params);
double tilde_I(const WaveField& u, double theta, const PhysicsParams& params);
/// I(kappa(u, theta)) by resampling the field.
double tilde_I_resampled(const WaveField& u, double theta, const PhysicsParams& params);
/// d/dtheta of tilde_I, equal to 2 Q(kappa(u, theta)).
double tilde_I_slope(const DilationNorms& norms, double theta, const PhysicsParams& params);

}  // namespace rotor
