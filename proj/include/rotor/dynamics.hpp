#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rotor/groundstate.hpp"
#include "rotor/physics.hpp"
#include "rotor/wave_field.hpp"

namespace rotor {

/// Largest admissible |dt| for the rotation substep, h / (|Omega| sqrt(N) L).
double rotation_dt_bound(const GridSpec& grid, double omega_mag);
/// min(1e-3, rotation_dt_bound).
double default_dt(const GridSpec& grid, double omega_mag);

/// Second-order splitting for i u_t = H u: half potential step (trap and
/// nonlinear phase, exact), kinetic step in Fourier space, rigid rotation by
/// |Omega| dt through three spectral shears, half potential step. Negative
/// dt runs the flow backwards.
class StrangPropagator {
 public:
  StrangPropagator(const GridSpec& grid, const PhysicsParams& params, double dt);

  double dt() const { return dt_; }
  /// Advances u by n steps, fusing adjacent half potential steps.
  void advance(WaveField& u, int n) const;

 private:
  void potential(WaveField& u, double tau) const;
  void kinetic(WaveField& u) const;
  void rotate(WaveField& u) const;
  void shear(WaveField& u, int axis, const std::vector<Complex>& phase) const;

  GridSpec grid_;
  PhysicsParams params_;
  double dt_;
  std::vector<Complex> kinetic_phase_;
  std::vector<Complex> trap_full_;
  std::vector<Complex> trap_half_;
  std::vector<Complex> shear_x_;  ///< M x M table, [k index][x2 index]
  std::vector<Complex> shear_y_;  ///< M x M table, [k index][x1 index]
};

/// One step; throws NumericalError("blowup") on non-finite output.
WaveField strang_step(const WaveField& u, double dt, const PhysicsParams& params);

/// <u, v>_Sigma = <u, v> + <grad u, grad v> + <x u, x v>.
Complex sigma_inner(const WaveField& u, const WaveField& v);

/// min over alpha of ||e^{i alpha} v - u||_Sigma.
double dist_sigma_mod_phase(const WaveField& u, const WaveField& v);

struct TrajectoryStats {
  std::vector<double> times;
  std::vector<double> mass_series;
  std::vector<double> energy_series;
  std::vector<double> grad_norm_series;
  std::vector<double> dist_series;     ///< empty without a reference
  std::vector<double> angular_series;  ///< Re <u, L_z u>
  bool blowup_flag = false;
  std::optional<double> blowup_time;
  std::string blowup_reason;
};

struct EvolveOptions {
  double sample_every = 0.1;
  double blowup_factor = 1e3;
  double boundary_tol = 1e-5;
  double spectral_tail_tol = 1e-6;
  /// Called at every sample with the current state.
  std::function<void(const WaveField& u, double t)> on_sample;
};

/// Propagates u0 to time T (> 0) with step dt (> 0, within the rotation
/// bound), sampling mass, energy, ||grad u||, <L_z> and, with a reference,
/// the Sigma distance to its phase orbit. Blow-up indicators stop the run.
TrajectoryStats evolve(const WaveField& u0, double T, double dt, const PhysicsParams& params,
                       const WaveField* reference = nullptr, const EvolveOptions& options = {},
                       WaveField* final_state = nullptr);

struct StabilitySummary {
  int trials = 0;
  double scale = 0.0;
  double T = 0.0;
  double amplification = 0.0;  ///< max over trials of sup_t dist(t) / dist(0)
  std::vector<double> trial_amplification;
  std::vector<double> trial_initial_dist;
  int blowups = 0;
  bool instability_evidence = false;
};

/// Perturbs the minimizer by random smooth fields with
/// ||delta||_Sigma = scale ||u_c||_Sigma, renormalizes to mass c and follows
/// the Sigma distance to the orbit of u_c.
StabilitySummary stability_experiment(const WaveField& u_c, const PhysicsParams& params, double scale, int n_trials,
                                      double T, double dt, std::uint64_t seed);
StabilitySummary stability_experiment(const GridSpec& grid, const PhysicsParams& params, const SolverConfig& config,
                                      double scale, int n_trials, double T, double dt);

}  // namespace rotor
