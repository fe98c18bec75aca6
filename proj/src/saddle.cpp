#include "rotor/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rotor/error.hpp"
#include "rotor/groundstate.hpp"
#include "rotor/spectral.hpp"
#include "rotor/sphere_descent.hpp"

namespace rotor {

namespace {

void require_mountain_pass_regime(const PhysicsParams& params) {
  if (!(params.a > 0.0)) throw ValidationError("mountain pass requires a > 0 (no negative-energy endpoint at a = 0)");
  if (!params.supercritical()) throw ValidationError("mountain pass requires p > 2 + 4/N");
}

WaveField dilate_resolved(const WaveField& u, double tau) {
  try {
    return dilate(u, tau);
  } catch (const NumericalError& e) {
    std::ostringstream msg;
    msg << "grid cannot resolve the field dilated by " << tau << " (" << e.what() << "); use a finer grid";
    throw NumericalError("unresolved", msg.str());
  }
}

double sigma_gap(const WaveField& a, const WaveField& b) { return std::sqrt(sigma_sq(a - b)); }

DilationNorms norms_from(const EnergyBreakdown& e, const PhysicsParams& params) {
  return DilationNorms{2.0 * e.kinetic, 2.0 * e.trap, e.nonlinear * params.p / (2.0 * params.a), e.rotation};
}

TermWeights weights_at(double theta, const PhysicsParams& params) {
  return TermWeights{std::exp(2.0 * theta), std::exp(-2.0 * theta), std::exp(params.p_delta() * theta)};
}

// Improved (energy-upwinded) tangent at interior node k.
WaveField path_tangent(const Path& path, std::size_t k) {
  const auto& e = path.energies;
  WaveField up = path.nodes[k + 1] - path.nodes[k];
  WaveField down = path.nodes[k] - path.nodes[k - 1];
  if (e[k + 1] > e[k] && e[k] > e[k - 1]) return up;
  if (e[k + 1] < e[k] && e[k] < e[k - 1]) return down;
  const double d_hi = std::max(std::abs(e[k + 1] - e[k]), std::abs(e[k - 1] - e[k]));
  const double d_lo = std::min(std::abs(e[k + 1] - e[k]), std::abs(e[k - 1] - e[k]));
  WaveField t = e[k + 1] > e[k - 1] ? d_hi * std::move(up) : d_lo * std::move(up);
  t.axpy(e[k + 1] > e[k - 1] ? d_lo : d_hi, down);
  return t;
}

// Redistributes interior nodes uniformly in cumulative Sigma arclength.
void reparameterize(Path& path, double c) {
  const std::size_t n = path.nodes.size();
  std::vector<double> s(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) s[k] = s[k - 1] + sigma_gap(path.nodes[k], path.nodes[k - 1]);
  std::vector<WaveField> fresh = path.nodes;
  std::size_t seg = 0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double target = s.back() * static_cast<double>(k) / static_cast<double>(n - 1);
    while (seg + 2 < n && s[seg + 1] < target) ++seg;
    const double w = (target - s[seg]) / std::max(s[seg + 1] - s[seg], 1e-300);
    WaveField f = (1.0 - w) * path.nodes[seg];
    f.axpy(w, path.nodes[seg + 1]);
    normalize_mass(f, c);
    fresh[k] = std::move(f);
  }
  path.nodes = std::move(fresh);
}

}  // namespace

Endpoint endpoint_v_c(const WaveField& u_c, const PhysicsParams& params, double r) {
  require_mountain_pass_regime(params);
  for (double l = 2.0; l <= 1024.0; l *= 2.0) {
    WaveField v = dilate_resolved(u_c, l);
    normalize_mass(v, u_c.mass());
    const EnergyBreakdown e = energy(v, params);
    if (e.total < 0.0 && e.sigma_dot > r) return Endpoint{std::move(v), l};
  }
  throw NumericalError("unresolved", "no dilation factor up to 1024 gives I(v_c) < 0 outside B(r)");
}

Path baseline_path(const WaveField& u_c, double l, int n_nodes, const PhysicsParams& params) {
  if (n_nodes < 17) throw ValidationError("baseline path needs at least 17 nodes");
  if (!(l > 1.0)) throw ValidationError("dilation factor l must exceed 1");
  const double c = u_c.mass();
  Path path;
  for (int k = 0; k < n_nodes; ++k) {
    const double t = static_cast<double>(k) / (n_nodes - 1);
    WaveField g = k == 0 ? u_c : dilate_resolved(u_c, 1.0 + t * (l - 1.0));
    if (k > 0) normalize_mass(g, c);
    path.params.push_back(t);
    path.energies.push_back(energy(g, params).total);
    path.nodes.push_back(std::move(g));
  }
  return path;
}

GammaEstimate estimate_gamma(const Path& baseline, const PhysicsParams& params, const GammaOptions& opt) {
  require_mountain_pass_regime(params);
  const std::size_t n = baseline.nodes.size();
  if (n < 3) throw ValidationError("path needs interior nodes");
  const double c = baseline.nodes.front().mass();
  const double sqrt_c = std::sqrt(c);

  GammaEstimate out;
  out.baseline_max = *std::max_element(baseline.energies.begin(), baseline.energies.end());
  Path path = baseline;

  double base_gap = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) base_gap = std::max(base_gap, sigma_gap(path.nodes[k + 1], path.nodes[k]));
  const auto [emin, emax] = std::minmax_element(baseline.energies.begin(), baseline.energies.end());
  double temperature = opt.temperature > 0.0 ? opt.temperature : 0.05 * (*emax - *emin);
  const double shift = 0.5 * params.dim;

  std::vector<WaveField> grads(n, WaveField(path.nodes[0].grid()));
  std::vector<double> step(n, opt.step);
  double climb_step = opt.step;
  int sweep = 0;
  for (; sweep < opt.sweeps; ++sweep) {
    if (sweep > 0 && sweep % opt.anneal_every == 0) temperature *= 0.5;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      auto h = apply_hamiltonian(path.nodes[k], params);
      path.energies[k] = h.energy.total;
      grads[k] = std::move(h.h_u);
    }
    const std::size_t top = static_cast<std::size_t>(
        std::max_element(path.energies.begin() + 1, path.energies.end() - 1) - path.energies.begin());
    const double e_top = path.energies[top];
    const bool climbing = sweep >= opt.climb_after;

    std::vector<double> gaps(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) gaps[k] = std::sqrt((path.nodes[k + 1] - path.nodes[k]).mass());

    std::vector<WaveField> next = path.nodes;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const WaveField& u = path.nodes[k];
      WaveField tau = path_tangent(path, k);
      tau.axpy(-real_inner(u, tau) / c, u);
      const double tn = std::sqrt(tau.mass());
      if (tn > 0.0) tau *= 1.0 / tn;

      auto tr = tangent_residual(u, grads[k]);
      if (k == top) out.top_residual = dual_norm(tr.r) / sqrt_c;
      WaveField z = precondition(tr.r, shift);
      z.axpy(-real_inner(u, z) / c, u);
      const double along = real_inner(tau, z);
      z.axpy(-along, tau);

      const double w = climbing && k == top ? 1.0 : std::max(opt.weight_floor, std::exp((path.energies[k] - e_top) / temperature));
      // Perpendicular descent with backtracking; the nonlinear stiffness is not in the preconditioner.
      if (w > 1e-8) {
        for (int tries = 0; tries < 30; ++tries) {
          WaveField trial = u;
          trial.axpy(-step[k] * w, z);
          normalize_mass(trial, c);
          if (energy(trial, params).total <= path.energies[k]) {
            next[k] = std::move(trial);
            step[k] = std::min(opt.step, 1.5 * step[k]);
            break;
          }
          step[k] *= 0.5;
        }
      }
      if (climbing && k == top) {
        // Ascent along the path: accept the largest halved step that raises I.
        const double e0 = energy(next[k], params).total;
        for (double h = climb_step; h > 1e-6 * opt.step; h *= 0.5) {
          WaveField trial = next[k];
          trial.axpy(h * along, tau);
          normalize_mass(trial, c);
          if (energy(trial, params).total > e0) {
            next[k] = std::move(trial);
            climb_step = std::min(opt.step, 1.5 * h);
            break;
          }
          climb_step = 0.5 * h;
        }
        continue;
      }
      next[k].axpy(opt.step * opt.spring * (gaps[k] - gaps[k - 1]) / sqrt_c, tau);
      normalize_mass(next[k], c);
    }
    path.nodes = std::move(next);
    if (climbing && out.top_residual < opt.tol) break;

    if (sweep % 10 == 9) {
      bool torn = false;
      for (std::size_t k = 0; k + 1 < n && !torn; ++k) {
        torn = sigma_gap(path.nodes[k + 1], path.nodes[k]) > opt.tear_factor * base_gap;
      }
      if (torn) {
        if (out.reparameterizations > 0) throw NumericalError("path_tear", "path tore again after reparameterization");
        reparameterize(path, c);
        ++out.reparameterizations;
      }
    }
  }
  for (std::size_t k = 1; k + 1 < n; ++k) path.energies[k] = energy(path.nodes[k], params).total;
  out.sweeps = sweep;
  out.gamma_c = *std::max_element(path.energies.begin(), path.energies.end());
  if (out.gamma_c > out.baseline_max) {
    out.gamma_c = out.baseline_max;
    out.path = baseline;
  } else {
    out.path = std::move(path);
  }
  return out;
}

std::optional<double> fiber_max_theta(const DilationNorms& norms, const PhysicsParams& params) {
  auto slope = [&](double th) { return tilde_I_slope(norms, th, params); };
  const double step = 0.02;
  double hi = 10.0;
  if (!(slope(hi) < 0.0)) return std::nullopt;
  double lo = hi - step;
  while (slope(lo) < 0.0) {
    hi = lo;
    lo -= step;
    if (lo < -10.0) return std::nullopt;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) < 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

MountainPassReport refine_saddle(const GammaEstimate& estimate, const PhysicsParams& params, double m_c_r,
                                 const SaddleOptions& opt) {
  require_mountain_pass_regime(params);
  const Path& path = estimate.path;
  const std::size_t top = static_cast<std::size_t>(
      std::max_element(path.energies.begin(), path.energies.end()) - path.energies.begin());
  if (top == 0 || top + 1 == path.nodes.size()) {
    throw ValidationError("path maximum sits at an endpoint; no interior maximum to refine");
  }
  WaveField u = path.nodes[top];
  const double c = u.mass();

  auto theta_of = [&](const EnergyBreakdown& e) {
    const auto th = fiber_max_theta(norms_from(e, params), params);
    if (!th) throw NumericalError("no_fiber_max", "dilation fiber has no interior maximum");
    return *th;
  };
  SphereObjective J = [&](const WaveField& v, WaveField& g) {
    const double th = theta_of(energy(v, params));
    auto h = apply_hamiltonian(v, params, weights_at(th, params));
    g = std::move(h.h_u);
    return h.energy.total;
  };

  DescentOptions dopt;
  dopt.mass = c;
  dopt.tol = opt.tol;
  dopt.max_iters = opt.max_iters;
  dopt.shift = 0.5 * params.dim;

  MountainPassReport rep{estimate.gamma_c, {}, u};
  for (int round = 0; round < opt.max_rounds; ++round) {
    auto d = sphere_descent(u, J, dopt);
    rep.iters += d.iters;
    const double th = theta_of(energy(d.field, params));
    u = std::abs(th) > 1e-12 ? dilate_resolved(d.field, std::exp(th)) : std::move(d.field);
    normalize_mass(u, c);
    rep.saddle_grad_residual = grad_residual(u, params);
    if (energy(u, params).total <= m_c_r + 1e-6) {
      throw NumericalError("collapsed_to_minimizer", "saddle refinement fell back to the local minimizer");
    }
    if (d.converged && rep.saddle_grad_residual <= 1e-5 && std::abs(th) < 1e-3) break;
  }

  const EnergyBreakdown e = energy(u, params);
  rep.gamma_c = estimate.gamma_c;
  for (std::size_t k = 0; k < path.nodes.size(); ++k) rep.path_nodes.emplace_back(path.params[k], path.energies[k]);
  rep.saddle_energy = e.total;
  rep.saddle_Q = e.pohozaev;
  rep.saddle_sigma_dot = e.sigma_dot;
  rep.omega_hat = e.omega_est;
  rep.m_c_r = m_c_r;
  rep.margin = estimate.gamma_c - m_c_r;
  const double h = 1e-3;
  rep.theta_slope_fd = (tilde_I_resampled(u, h, params) - tilde_I_resampled(u, -h, params)) / (2.0 * h);
  rep.identity_defect = std::abs(rep.theta_slope_fd - 2.0 * e.pohozaev) / e.sigma_dot;
  if (opt.c_omega) rep.boundedness_ok = *opt.c_omega * e.sigma_dot <= e.total + 1e-3;
  rep.accepted = std::abs(e.pohozaev) <= 1e-4 * e.sigma_dot && rep.saddle_grad_residual <= 1e-5 &&
                 e.total > m_c_r;
  rep.saddle_field = std::move(u);
  return rep;
}

}  // namespace rotor
