#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotor/functionals.hpp"
#include "rotor/grid.hpp"
#include "rotor/physics.hpp"
#include "rotor/wave_field.hpp"

namespace rotor {

enum class InitKind { gaussian, perturbed_gaussian, vortex_seeded, from_file };

struct SolverConfig {
  double dt_imag = 1e-2;  ///< first trial step of the line search
  double tol_grad = 1e-8;
  int max_iters = 200000;
  InitKind init_kind = InitKind::gaussian;
  std::uint64_t seed = 0;
  double r = 1.0;
  double c = 0.01;
  /// Required when init_kind == from_file.
  std::optional<WaveField> initial;
};

/// Throws ValidationError on dt_imag/tol_grad/max_iters <= 0, r <= 0,
/// c <= 0 or c > r/N.
void validate(const SolverConfig& config, int dim);

enum class Region { inside_nu_ball, annulus, boundary };
std::string to_string(Region region);
std::string to_string(InitKind kind);

struct GroundStateReport {
  WaveField field;
  double omega_c = 0.0;
  EnergyBreakdown energy;
  int iters = 0;
  double grad_residual = 0.0;
  Complex l0{};
  double dist_sq_to_l0psi0 = 0.0;
  Region region = Region::inside_nu_ball;
  bool feasible = false;
  bool converged = false;
};

/// ||u||_Sigma^2 = ||u||_2^2 + ||grad u||^2 + ||x u||^2.
double sigma_sq(const WaveField& u);

/// Constrained gradient-norm used as the stopping criterion:
/// ||(1 - Lap)^{-1/2}(H u - omega u)||_2 / sqrt(c).
double grad_residual(const WaveField& u, const PhysicsParams& params);

/// Local minimizer of I on S(c) near the small-norm initial state.
/// B(r) is monitored; leaving it throws NumericalError("escaped_ball").
GroundStateReport minimize_local(const GridSpec& grid, const PhysicsParams& params, const SolverConfig& config);

/// ||u - l0 psi_0||_Sigma^2 with l0 = <psi_0, u>.
double dist_to_gaussian(const WaveField& u);
double dist_to_gaussian(const GroundStateReport& report);

/// Region of ||u||_Sigma-dot^2 against nu r, r.
Region classify_region(double sigma_dot, double omega_mag, double r);

struct SweepRow {
  double c = 0.0;
  double m_over_c = 0.0;
  double omega_c = 0.0;
  double ratio_grad = 0.0;  ///< (||grad u||^2 - rot)/c
  double ratio_trap = 0.0;  ///< (||x u||^2 - rot)/c
  double dist_sq = 0.0;
  double sigma_dot = 0.0;
  Region region = Region::inside_nu_ball;
  bool converged = false;
  std::string error;
};

/// One solve per mass; rows ordered by increasing c. `c_list` must be
/// strictly decreasing with every entry feasible.
std::vector<SweepRow> asymptotics_sweep(const GridSpec& grid, const PhysicsParams& params, const SolverConfig& base,
                                        const std::vector<double>& c_list);

struct GeometryReport {
  double c = 0.0;
  double r = 0.0;
  double inner_inf = 0.0;     ///< I at the minimizer, inside B(nu r)
  double inner_sigma_dot = 0.0;
  double annulus_inf = 0.0;   ///< penalized minimization over B(r) \ B(mu r)
  double annulus_sigma_dot = 0.0;
  double gap = 0.0;           ///< annulus_inf - inner_inf
  double annulus_lower_bound = 0.0;
  double inner_upper_bound = 0.0;
  bool inner_in_nu_ball = false;
  int annulus_iters = 0;
};

/// Compares the infimum of I over S(c) inside B(nu r) with that over the
/// annulus mu r <= ||u||_Sigma-dot^2 <= r.
GeometryReport geometry_probe(const GridSpec& grid, const PhysicsParams& params, const SolverConfig& config,
                              double gn_const);

}  // namespace rotor
