#include "rotor/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rotor/error.hpp"
#include "rotor/functionals.hpp"
#include "rotor/random.hpp"
#include "rotor/spectral.hpp"

namespace rotor {

double rotation_dt_bound(const GridSpec& grid, double omega_mag) {
  if (omega_mag == 0.0) return std::numeric_limits<double>::infinity();
  return grid.spacing() / (omega_mag * std::sqrt(static_cast<double>(grid.dim)) * grid.half_width);
}

double default_dt(const GridSpec& grid, double omega_mag) { return std::min(1e-3, rotation_dt_bound(grid, omega_mag)); }

StrangPropagator::StrangPropagator(const GridSpec& grid, const PhysicsParams& params, double dt)
    : grid_(grid), params_(params), dt_(dt) {
  if (grid.dim != params.dim) throw ValidationError("grid and physics dimensions differ");
  if (!(dt != 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be finite and nonzero");
  if (std::abs(dt) > rotation_dt_bound(grid, params.omega_mag)) {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds the rotation step bound " << rotation_dt_bound(grid, params.omega_mag);
    throw ValidationError(msg.str());
  }
  const auto& ops = SpectralOps::for_grid(grid);
  const auto k2 = ops.k_squared();
  const auto r2 = ops.r_squared();
  kinetic_phase_.resize(k2.size());
  trap_full_.resize(k2.size());
  trap_half_.resize(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) {
    kinetic_phase_[i] = std::polar(1.0, -0.5 * dt * k2[i]);
    trap_full_[i] = std::polar(1.0, -0.5 * dt * r2[i]);
    trap_half_[i] = std::polar(1.0, -0.25 * dt * r2[i]);
  }

  if (params.omega_mag != 0.0) {
    const int m = grid.points_per_axis;
    const double alpha = params.omega_mag * dt;
    const double t = std::tan(0.5 * alpha), s = std::sin(alpha);
    const auto k = ops.axis_wavenumbers();
    const auto x = ops.axis_coords();
    shear_x_.resize(static_cast<std::size_t>(m) * m);
    shear_y_.resize(static_cast<std::size_t>(m) * m);
    for (int ki = 0; ki < m; ++ki) {
      for (int xi = 0; xi < m; ++xi) {
        shear_x_[ki * m + xi] = std::polar(1.0, -k[ki] * s * x[xi]);
        shear_y_[ki * m + xi] = std::polar(1.0, k[ki] * t * x[xi]);
      }
    }
  }
}

void StrangPropagator::potential(WaveField& u, double tau) const {
  const auto& trap = tau == dt_ ? trap_full_ : trap_half_;
  const double a = params_.a, q = 0.5 * (params_.p - 2.0);
  if (a == 0.0) {
    for (std::size_t i = 0; i < u.size(); ++i) u[i] *= trap[i];
    return;
  }
  const int qi = static_cast<int>(q);
  const bool integer = q == qi;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double rho = std::norm(u[i]);
    double w = rho;
    if (integer) {
      for (int k = 1; k < qi; ++k) w *= rho;
    } else {
      w = std::pow(rho, q);
    }
    u[i] *= trap[i] * std::polar(1.0, tau * a * w);
  }
}

void StrangPropagator::kinetic(WaveField& u) const {
  const auto& ops = SpectralOps::for_grid(grid_);
  ops.forward(u.values());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] *= kinetic_phase_[i];
  ops.inverse(u.values());
}

// Translates every line along `axis` (0 or 1) by an amount proportional to
// the coordinate on the other in-plane axis.
void StrangPropagator::shear(WaveField& u, int axis, const std::vector<Complex>& phase) const {
  const auto& ops = SpectralOps::for_grid(grid_);
  const std::size_t m = grid_.points_per_axis;
  const std::size_t inner = u.size() / (m * m);
  ops.forward_axis(u.values(), axis);
  Complex* d = u.data();
  for (std::size_t i0 = 0; i0 < m; ++i0) {
    for (std::size_t i1 = 0; i1 < m; ++i1) {
      const Complex f = axis == 0 ? phase[i0 * m + i1] : phase[i1 * m + i0];
      Complex* line = d + (i0 * m + i1) * inner;
      for (std::size_t j = 0; j < inner; ++j) line[j] *= f;
    }
  }
  ops.inverse_axis(u.values(), axis);
}

void StrangPropagator::rotate(WaveField& u) const {
  if (shear_x_.empty()) return;
  // R = [[1,0],[t,1]] [[1,-s],[0,1]] [[1,0],[t,1]], t = tan(alpha/2), s = sin(alpha)
  shear(u, 1, shear_y_);
  shear(u, 0, shear_x_);
  shear(u, 1, shear_y_);
}

void StrangPropagator::advance(WaveField& u, int n) const {
  if (n <= 0) return;
  potential(u, 0.5 * dt_);
  for (int i = 0; i < n; ++i) {
    kinetic(u);
    rotate(u);
    potential(u, i + 1 < n ? dt_ : 0.5 * dt_);
  }
}

WaveField strang_step(const WaveField& u, double dt, const PhysicsParams& params) {
  StrangPropagator prop(u.grid(), params, dt);
  WaveField out = u;
  prop.advance(out, 1);
  if (!out.all_finite()) throw NumericalError("blowup", "non-finite field after a propagation step");
  return out;
}

Complex sigma_inner(const WaveField& u, const WaveField& v) {
  const auto& ops = SpectralOps::for_grid(u.grid());
  WaveField uh = u, vh = v;
  ops.forward(uh.values());
  ops.forward(vh.values());
  const auto k2 = ops.k_squared();
  const auto r2 = ops.r_squared();
  Complex grad{}, rest{};
  for (std::size_t i = 0; i < u.size(); ++i) {
    grad += k2[i] * std::conj(uh[i]) * vh[i];
    rest += (1.0 + r2[i]) * std::conj(u[i]) * v[i];
  }
  const double h = u.grid().cell_volume();
  return h * (rest + grad / static_cast<double>(u.size()));
}

double dist_sigma_mod_phase(const WaveField& u, const WaveField& v) {
  if (!(u.grid() == v.grid())) throw ValidationError("fields live on different grids");
  const Complex z = sigma_inner(u, v);
  WaveField d = v;
  if (std::abs(z) > 0.0) d *= std::conj(z) / std::abs(z);
  d -= u;
  return std::sqrt(std::max(0.0, sigma_inner(d, d).real()));
}

TrajectoryStats evolve(const WaveField& u0, double T, double dt, const PhysicsParams& params,
                       const WaveField* reference, const EvolveOptions& opt, WaveField* final_state) {
  if (!(T > 0.0)) throw ValidationError("T must be positive");
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (!(opt.sample_every > 0.0)) throw ValidationError("sample_every must be positive");
  require_finite(u0, "initial field");
  if (reference && !(reference->grid() == u0.grid())) throw ValidationError("reference grid differs");

  const StrangPropagator prop(u0.grid(), params, dt);
  const int per_sample = std::max(1, static_cast<int>(std::lround(opt.sample_every / dt)));
  const long total_steps = std::lround(T / dt);

  TrajectoryStats st;
  WaveField u = u0;
  double grad0 = 0.0;
  auto record = [&](double t) {
    const EnergyBreakdown e = energy(u, params);
    const double g = std::sqrt(2.0 * e.kinetic);
    st.times.push_back(t);
    st.mass_series.push_back(u.mass());
    st.energy_series.push_back(e.total);
    st.grad_norm_series.push_back(g);
    st.angular_series.push_back(real_inner(u, apply_Lz(u)));
    if (reference) st.dist_series.push_back(dist_sigma_mod_phase(*reference, u));
    if (opt.on_sample) opt.on_sample(u, t);
    return g;
  };
  grad0 = record(0.0);

  long done = 0;
  while (done < total_steps) {
    const int n = static_cast<int>(std::min<long>(per_sample, total_steps - done));
    prop.advance(u, n);
    done += n;
    const double t = done * dt;
    if (!u.all_finite()) {
      st.blowup_flag = true;
      st.blowup_time = t;
      st.blowup_reason = "non_finite";
      break;
    }
    const double g = record(t);
    std::string reason;
    if (g > opt.blowup_factor * grad0) reason = "gradient_growth";
    else if (spectral_tail_fraction(u) > opt.spectral_tail_tol) reason = "spectral_tail";
    else if (boundary_mass_fraction(u) > opt.boundary_tol) reason = "boundary_leak";
    if (!reason.empty()) {
      st.blowup_flag = true;
      st.blowup_time = t;
      st.blowup_reason = reason;
      break;
    }
  }
  if (final_state) *final_state = std::move(u);
  return st;
}

StabilitySummary stability_experiment(const WaveField& u_c, const PhysicsParams& params, double scale, int n_trials,
                                      double T, double dt, std::uint64_t seed) {
  if (!(scale > 0.0 && scale <= 0.1)) throw ValidationError("perturbation_scale must lie in (0, 0.1]");
  if (n_trials <= 0) throw ValidationError("trials must be positive");
  const double c = u_c.mass();
  const double norm_c = std::sqrt(sigma_sq(u_c));

  StabilitySummary sum;
  sum.trials = n_trials;
  sum.scale = scale;
  sum.T = T;
  for (int j = 0; j < n_trials; ++j) {
    CounterRng rng(seed, Stream::perturbation, static_cast<std::uint64_t>(j));
    WaveField delta = random_smooth_field(u_c.grid(), rng);
    delta *= scale * norm_c / std::sqrt(sigma_sq(delta));
    WaveField u0 = u_c + delta;
    normalize_mass(u0, c);
    EvolveOptions opt;
    const auto st = evolve(u0, T, dt, params, &u_c, opt);
    const double d0 = st.dist_series.front();
    const double sup = *std::max_element(st.dist_series.begin(), st.dist_series.end());
    sum.trial_initial_dist.push_back(d0);
    sum.trial_amplification.push_back(sup / d0);
    if (st.blowup_flag) ++sum.blowups;
  }
  sum.amplification = *std::max_element(sum.trial_amplification.begin(), sum.trial_amplification.end());
  sum.instability_evidence = sum.blowups > 0;
  return sum;
}

StabilitySummary stability_experiment(const GridSpec& grid, const PhysicsParams& params, const SolverConfig& config,
                                      double scale, int n_trials, double T, double dt) {
  const auto rep = minimize_local(grid, params, config);
  if (!rep.converged) throw NumericalError("not_converged", "minimizer did not converge; stability run skipped");
  return stability_experiment(rep.field, params, scale, n_trials, T, dt, config.seed);
}

}  // namespace rotor
