#include "rotor/groundstate.hpp"

#include <cmath>
#include <sstream>

#include "rotor/error.hpp"
#include "rotor/random.hpp"
#include "rotor/spectral.hpp"
#include "rotor/sphere_descent.hpp"

namespace rotor {

void validate(const SolverConfig& cfg, int dim) {
  if (!(cfg.dt_imag > 0.0)) throw ValidationError("dt_imag must be positive");
  if (!(cfg.tol_grad > 0.0)) throw ValidationError("tol_grad must be positive");
  if (cfg.max_iters <= 0) throw ValidationError("max_iters must be positive");
  if (!(cfg.r > 0.0)) throw ValidationError("r must be positive");
  if (!(cfg.c > 0.0)) throw ValidationError("c must be positive");
  if (cfg.c > cfg.r / dim) throw ValidationError("c > r/N: S(c)∩B(r) empty");
  if (cfg.init_kind == InitKind::from_file && !cfg.initial) {
    throw ValidationError("init_kind=from_file requires an initial field");
  }
}

std::string to_string(Region region) {
  switch (region) {
    case Region::inside_nu_ball: return "inside_nu_ball";
    case Region::annulus: return "annulus";
    case Region::boundary: return "boundary";
  }
  return "?";
}

std::string to_string(InitKind kind) {
  switch (kind) {
    case InitKind::gaussian: return "gaussian";
    case InitKind::perturbed_gaussian: return "perturbed_gaussian";
    case InitKind::vortex_seeded: return "vortex_seeded";
    case InitKind::from_file: return "from_file";
  }
  return "?";
}

double sigma_sq(const WaveField& u) { return u.mass() + sigma_dot_sq(u); }

double grad_residual(const WaveField& u, const PhysicsParams& params) {
  const auto h = apply_hamiltonian(u, params);
  return dual_norm(tangent_residual(u, h.h_u).r) / std::sqrt(u.mass());
}

Region classify_region(double sigma_dot, double omega_mag, double r) {
  const double nu = (1.0 - omega_mag) / 4.0;
  if (sigma_dot <= nu * r) return Region::inside_nu_ball;
  if (sigma_dot >= (1.0 - 1e-6) * r) return Region::boundary;
  return Region::annulus;
}

namespace {

WaveField initial_state(const GridSpec& grid, const SolverConfig& cfg) {
  WaveField u = hermite_ground(grid);
  switch (cfg.init_kind) {
    case InitKind::gaussian: break;
    case InitKind::perturbed_gaussian: {
      CounterRng rng(cfg.seed, Stream::init);
      WaveField d = random_smooth_field(grid, rng);
      normalize_mass(d, 1.0);
      u.axpy(0.1, d);
      break;
    }
    case InitKind::vortex_seeded: {
      WaveField v = vortex_mode(grid, 1);
      normalize_mass(v, 1.0);
      u.axpy(0.3, v);
      break;
    }
    case InitKind::from_file:
      if (!(cfg.initial->grid() == grid)) throw ValidationError("initial field grid does not match [grid]");
      u = *cfg.initial;
      break;
  }
  normalize_mass(u, cfg.c);
  return u;
}

SphereObjective energy_objective(const PhysicsParams& params) {
  return [params](const WaveField& u, WaveField& g) {
    auto h = apply_hamiltonian(u, params);
    g = std::move(h.h_u);
    return h.energy.total;
  };
}

void gauge_phase(GroundStateReport& rep) {
  const Complex l0 = project_l0(rep.field);
  if (std::abs(l0) > 1e-12 * std::sqrt(rep.field.mass())) {
    rep.field *= std::conj(l0) / std::abs(l0);
  }
  rep.l0 = project_l0(rep.field);
}

}  // namespace

double dist_to_gaussian(const WaveField& u) {
  WaveField d = u;
  d.axpy(-project_l0(u), hermite_ground(u.grid()));
  return sigma_sq(d);
}

double dist_to_gaussian(const GroundStateReport& report) { return dist_to_gaussian(report.field); }

GroundStateReport minimize_local(const GridSpec& grid, const PhysicsParams& params, const SolverConfig& cfg) {
  validate(cfg, params.dim);
  if (grid.dim != params.dim) throw ValidationError("grid and physics dimensions differ");

  DescentOptions opt;
  opt.mass = cfg.c;
  opt.tol = cfg.tol_grad;
  opt.max_iters = cfg.max_iters;
  opt.initial_step = cfg.dt_imag;
  opt.shift = 0.5 * params.dim;
  opt.monitor = [&](const WaveField& u, double value, int iter) {
    const double s = sigma_dot_sq(u);
    if (s > cfg.r) {
      std::ostringstream msg;
      msg << "iterate left B(r) at iteration " << iter << " (||u||^2 = " << s << " > r = " << cfg.r
          << ", I = " << value << "); c is likely above the local-minimum regime";
      throw NumericalError("escaped_ball", msg.str());
    }
  };

  auto d = sphere_descent(initial_state(grid, cfg), energy_objective(params), opt);

  GroundStateReport rep{std::move(d.field), d.multiplier, {}, d.iters, d.residual, {}, 0.0,
                        Region::inside_nu_ball, false, d.converged};
  gauge_phase(rep);
  rep.energy = energy(rep.field, params);
  rep.omega_c = rep.energy.omega_est;
  rep.dist_sq_to_l0psi0 = dist_to_gaussian(rep.field);
  rep.region = classify_region(rep.energy.sigma_dot, params.omega_mag, cfg.r);
  rep.feasible = std::abs(rep.field.mass() - cfg.c) <= 1e-10 * cfg.c && rep.energy.sigma_dot <= cfg.r;
  return rep;
}

std::vector<SweepRow> asymptotics_sweep(const GridSpec& grid, const PhysicsParams& params, const SolverConfig& base,
                                        const std::vector<double>& c_list) {
  if (c_list.empty()) throw ValidationError("c_list is empty");
  for (std::size_t i = 0; i < c_list.size(); ++i) {
    SolverConfig cfg = base;
    cfg.c = c_list[i];
    validate(cfg, params.dim);
    if (i > 0 && !(c_list[i] < c_list[i - 1])) throw ValidationError("c_list must be strictly decreasing");
  }
  std::vector<SweepRow> rows;
  for (auto it = c_list.rbegin(); it != c_list.rend(); ++it) {
    SweepRow row;
    row.c = *it;
    SolverConfig cfg = base;
    cfg.c = *it;
    try {
      const auto rep = minimize_local(grid, params, cfg);
      const auto& e = rep.energy;
      row.m_over_c = e.total / row.c;
      row.omega_c = rep.omega_c;
      row.ratio_grad = (2.0 * e.kinetic - e.rotation) / row.c;
      row.ratio_trap = (2.0 * e.trap - e.rotation) / row.c;
      row.dist_sq = rep.dist_sq_to_l0psi0;
      row.sigma_dot = e.sigma_dot;
      row.region = rep.region;
      row.converged = rep.converged;
      if (!rep.converged) row.error = "not converged";
    } catch (const NumericalError& err) {
      row.error = err.kind() + ": " + err.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

GeometryReport geometry_probe(const GridSpec& grid, const PhysicsParams& params, const SolverConfig& cfg,
                              double gn_const) {
  validate(cfg, params.dim);
  const RotationConstants k = compute_constants(params, cfg.r, gn_const);
  GeometryReport rep;
  rep.c = cfg.c;
  rep.r = cfg.r;
  const double tail = params.a * std::pow(gn_const, params.p) * std::pow(cfg.r, 0.5 * (params.p_delta() - 2.0)) *
                      std::pow(cfg.c, 0.5 * params.p * (1.0 - params.delta_p()));
  rep.annulus_lower_bound = k.mu * cfg.r * (k.c_star - 2.0 / params.p * tail);
  rep.inner_upper_bound = k.nu * cfg.r * k.c_upper;

  const auto inner = minimize_local(grid, params, cfg);
  rep.inner_inf = inner.energy.total;
  rep.inner_sigma_dot = inner.energy.sigma_dot;
  rep.inner_in_nu_ball = inner.energy.sigma_dot <= k.nu * cfg.r;

  // Quadratic penalty keeping mu r <= ||u||^2 <= r, tightened in stages.
  const double lo = k.mu * cfg.r, hi = cfg.r;
  const auto& ops = SpectralOps::for_grid(grid);
  const auto r2 = ops.r_squared();
  const auto k2 = ops.k_squared();
  double kappa_pen = 0.0;
  SphereObjective penalized = [&](const WaveField& u, WaveField& g) {
    auto h = apply_hamiltonian(u, params);
    g = std::move(h.h_u);
    const double s = h.energy.sigma_dot;
    const double defect = s < lo ? s - lo : (s > hi ? s - hi : 0.0);
    if (defect != 0.0) {
      // d/du of (kappa/2) defect^2 is kappa defect (-Lap + |x|^2) u.
      WaveField a = u;
      ops.forward(a.values());
      for (std::size_t i = 0; i < a.size(); ++i) a[i] *= k2[i];
      ops.inverse(a.values());
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += r2[i] * u[i];
      g.axpy(kappa_pen * defect, a);
    }
    return h.energy.total + 0.5 * kappa_pen * defect * defect;
  };

  WaveField u = vortex_mode(grid, 1);
  normalize_mass(u, cfg.c);
  u.axpy(1.0, inner.field);
  normalize_mass(u, cfg.c);
  DescentOptions opt;
  opt.mass = cfg.c;
  opt.tol = 1e-7;
  opt.max_iters = 60;
  opt.shift = 0.5 * params.dim;
  for (double kp : {10.0, 1e3, 1e4}) {
    kappa_pen = kp / cfg.r;
    auto d = sphere_descent(u, penalized, opt);
    u = std::move(d.field);
    rep.annulus_iters += d.iters;
  }
  // Move the penalized minimizer onto the annulus along its dilation orbit.
  const DilationNorms n = dilation_norms(u, params);
  const double s = n.grad_sq + n.x_sq;
  double theta = 0.0;
  if (s < lo || s > hi) {
    const double target = s < lo ? lo : hi;
    // grad e^{2t} + x e^{-2t} = target, root nearest t = 0.
    const double disc = target * target - 4.0 * n.grad_sq * n.x_sq;
    if (disc < 0.0) throw NumericalError("annulus_infeasible", "dilation orbit does not reach the annulus");
    const double y1 = (target + std::sqrt(disc)) / (2.0 * n.grad_sq);
    const double y2 = (target - std::sqrt(disc)) / (2.0 * n.grad_sq);
    const double t1 = 0.5 * std::log(y1), t2 = 0.5 * std::log(y2);
    theta = std::abs(t1) < std::abs(t2) ? t1 : t2;
  }
  rep.annulus_inf = tilde_I(n, theta, params);
  rep.annulus_sigma_dot = n.grad_sq * std::exp(2.0 * theta) + n.x_sq * std::exp(-2.0 * theta);
  rep.gap = rep.annulus_inf - rep.inner_inf;
  return rep;
}

}  // namespace rotor
