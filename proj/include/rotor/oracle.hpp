#pragma once

#include <vector>

namespace rotor {

/// Positive radial ground state W of
///   -Lap W + (1/delta_p - 1) W = (2/(p delta_p)) W^{p-1}
/// sampled on a uniform radial grid r_i = i R/(n-1).
struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> slopes;  ///< W'(r)
  int dim = 3;
  double p = 4.0;
  double l2_sq = 0.0;       ///< ||W||_2^2
  double grad_sq = 0.0;     ///< ||grad W||_2^2
  double lp_pow = 0.0;      ///< ||W||_p^p
  double matching_radius = 0.0;
  bool decay_ok = false;

  /// Profile value at radius r by cubic Hermite interpolation (0 beyond R).
  double operator()(double r) const;
};

/// Radius at which the linear tail has decayed by roughly e^{-30}.
double default_radius(int dim, double p);

/// Shooting on W(0) with RK4 steps and a regular series start at the origin;
/// the tail beyond the matching radius is the decaying solution of the
/// linearized equation. Requires 2 < p < 2*, R >= 15 and n_points >= 4096.
/// R = 0 selects default_radius.
RadialProfile solve_Wp(int dim, double p, double R = 0.0, int n_points = 8192);

/// max_{r <= R - 2} |W'' + (N-1)/r W' - (1/delta-1) W + 2/(p delta) W^{p-1}|
/// with sixth-order central differences.
double ode_residual(const RadialProfile& profile, double trusted_margin = 2.0);

/// Largest relative defect of the Nehari and Pohozaev integral identities
///   G + alpha M = beta P,  (N-2)/2 G + N/2 alpha M = N/p beta P.
double pohozaev_defect(const RadialProfile& profile);

/// C_{N,p} = (p / (2 ||W||_2^{p-2}))^{1/p}.
double gn_constant(const RadialProfile& profile);

}  // namespace rotor
