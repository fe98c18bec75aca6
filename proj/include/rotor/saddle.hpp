#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rotor/functionals.hpp"
#include "rotor/physics.hpp"
#include "rotor/wave_field.hpp"

namespace rotor {

/// Fields on S(c) joining the local minimizer to a negative-energy state.
struct Path {
  std::vector<double> params;  ///< node parameters in [0, 1]
  std::vector<WaveField> nodes;
  std::vector<double> energies;
};

struct Endpoint {
  WaveField v_c;
  double l = 0.0;
};

/// v_c = l^{N/2} u_c(l x) for the first l in 2, 4, 8, ... with I(v_c) < 0
/// and ||v_c||_Sigma-dot^2 > r. Throws ValidationError unless a > 0 and
/// p delta_p > 2; NumericalError("unresolved") when the grid cannot hold
/// the compressed field.
Endpoint endpoint_v_c(const WaveField& u_c, const PhysicsParams& params, double r);

/// g(t) = (1 + t(l-1))^{N/2} u_c((1 + t(l-1)) x) at n_nodes (>= 17) equally
/// spaced t, each renormalized to mass c.
Path baseline_path(const WaveField& u_c, double l, int n_nodes, const PhysicsParams& params);

struct GammaOptions {
  int sweeps = 600;
  double temperature = 0.0;     ///< softmax temperature; 0 picks 0.05 (max - min) of the baseline
  int anneal_every = 200;       ///< temperature halves this often
  double step = 0.4;            ///< preconditioned step length
  double spring = 0.5;
  double weight_floor = 0.0;    ///< minimum relative step of low-energy nodes
  int climb_after = 100;        ///< sweeps before the top node climbs
  double tear_factor = 4.0;     ///< tear when a Sigma gap exceeds this many largest baseline gaps
  double tol = 2e-3;            ///< stop when the climbing node residual falls below
};

struct GammaEstimate {
  double gamma_c = 0.0;  ///< upper estimate: max of I over the relaxed path
  double baseline_max = 0.0;
  Path path;
  int sweeps = 0;
  int reparameterizations = 0;
  double top_residual = 0.0;
};

/// Elastic-band relaxation of the path maximum with softmax weights, nudged
/// (perpendicular) preconditioned forces, springs along the path and a
/// climbing top node. Endpoints stay fixed. Never returns more than the
/// baseline maximum.
GammaEstimate estimate_gamma(const Path& baseline, const PhysicsParams& params, const GammaOptions& options = {});

/// Largest critical point of theta -> I(kappa(u, theta)) (its local
/// maximum), from the closed-form dilation law. Empty when the fiber has no
/// interior maximum.
std::optional<double> fiber_max_theta(const DilationNorms& norms, const PhysicsParams& params);

struct SaddleOptions {
  double tol = 1e-7;
  int max_iters = 3000;
  int max_rounds = 6;
  std::optional<double> c_omega;  ///< enables the boundedness monitor
};

struct MountainPassReport {
  double gamma_c = 0.0;
  std::vector<std::pair<double, double>> path_nodes;  ///< (t, I)
  WaveField saddle_field;
  double saddle_energy = 0.0;
  double saddle_Q = 0.0;
  double saddle_sigma_dot = 0.0;
  double saddle_grad_residual = 0.0;
  double omega_hat = 0.0;
  double m_c_r = 0.0;
  double margin = 0.0;          ///< gamma_c - m_c_r
  double theta_slope_fd = 0.0;  ///< central difference of I(kappa(u, theta)) at 0
  double identity_defect = 0.0; ///< |slope - 2Q| / ||u||_Sigma-dot^2
  bool boundedness_ok = true;
  bool accepted = false;
  int iters = 0;
};

/// From the top node, minimizes J(u) = max_theta I(kappa(u, theta)) on S(c);
/// critical points of J dilate to critical points of I with Q = 0. Throws
/// NumericalError("collapsed_to_minimizer") when I drops to m_c_r.
MountainPassReport refine_saddle(const GammaEstimate& estimate, const PhysicsParams& params, double m_c_r,
                                 const SaddleOptions& options = {});

}  // namespace rotor
