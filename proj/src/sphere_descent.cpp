#include "rotor/sphere_descent.hpp"

#include <algorithm>
#include <cmath>

#include "rotor/error.hpp"
#include "rotor/spectral.hpp"

namespace rotor {

double dual_norm(const WaveField& r) {
  const auto& ops = SpectralOps::for_grid(r.grid());
  WaveField f = r;
  ops.forward(f.values());
  const auto k2 = ops.k_squared();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += std::norm(f[i]) / (1.0 + k2[i]);
  // Parseval: h^N sum |u|^2 = h^N / M^N sum |u_hat|^2
  return std::sqrt(sum * r.grid().cell_volume() / static_cast<double>(f.size()));
}

TangentResidual tangent_residual(const WaveField& u, const WaveField& g) {
  const double lambda = real_inner(u, g) / u.mass();
  WaveField r = g;
  r.axpy(-lambda, u);
  return {std::move(r), lambda};
}

WaveField precondition(const WaveField& r, double shift) {
  const auto& ops = SpectralOps::for_grid(r.grid());
  const auto r2 = ops.r_squared();
  const auto k2 = ops.k_squared();
  WaveField z = r;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] /= std::sqrt(shift + 0.5 * r2[i]);
  ops.forward(z.values());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] /= shift + 0.5 * k2[i];
  ops.inverse(z.values());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] /= std::sqrt(shift + 0.5 * r2[i]);
  return z;
}

namespace {

void project_tangent(WaveField& v, const WaveField& u, double c) { v.axpy(-real_inner(u, v) / c, u); }

// Point and velocity along the great circle through u with initial velocity p.
struct Arc {
  WaveField point;
  WaveField velocity;
};

Arc arc(const WaveField& u, const WaveField& p, double t, double c) {
  const double rho = std::sqrt(p.mass() / c);
  const double cs = std::cos(rho * t), sn = std::sin(rho * t);
  WaveField point = cs * u;
  point.axpy(rho > 0.0 ? sn / rho : t, p);
  WaveField velocity = cs * p;
  velocity.axpy(-rho * sn, u);
  normalize_mass(point, c);
  return {std::move(point), std::move(velocity)};
}

struct Sample {
  double t;
  double value;
  double slope;
  Arc a;
  WaveField g;
};

}  // namespace

DescentResult sphere_descent(WaveField u, const SphereObjective& objective, const DescentOptions& opt) {
  if (!(opt.mass > 0.0)) throw ValidationError("descent mass must be positive");
  if (!(opt.tol > 0.0)) throw ValidationError("descent tolerance must be positive");
  const double c = opt.mass;
  const double sqrt_c = std::sqrt(c);
  normalize_mass(u, c);

  DescentResult res{u, 0.0, 0.0, 0.0, 0, false, {}};
  WaveField g(u.grid());
  double value = objective(u, g);
  auto [r, lambda] = tangent_residual(u, g);
  double residual = dual_norm(r) / sqrt_c;

  WaveField z = precondition(r, opt.shift);
  project_tangent(z, u, c);
  WaveField dir = -1.0 * z;
  double rz = real_inner(r, z);
  double step = opt.initial_step;
  int since_restart = 0;

  int it = 0;
  for (; it < opt.max_iters && residual > opt.tol; ++it) {
    double slope0 = 2.0 * real_inner(g, dir);
    if (!(slope0 < 0.0)) {
      dir = -1.0 * z;
      slope0 = 2.0 * real_inner(g, dir);
      since_restart = 0;
      if (!(slope0 < 0.0)) break;
    }
    // Arc parameter scaled so that t = step moves an L^2 distance step*sqrt(c).
    const double dir_norm = std::sqrt(dir.mass());
    auto sample = [&](double t) {
      const double s = t * sqrt_c / dir_norm;
      Arc a = arc(u, dir, s, c);
      WaveField gt(u.grid());
      const double v = objective(a.point, gt);
      const double sl = 2.0 * real_inner(gt, a.velocity) * sqrt_c / dir_norm;
      return Sample{t, v, sl, std::move(a), std::move(gt)};
    };
    const double slope0_t = slope0 * sqrt_c / dir_norm;

    Sample s1 = sample(step);
    // Extrapolate while the slope stays negative with no curvature gained.
    for (int k = 0; k < 20 && s1.slope <= slope0_t && s1.value < value; ++k) s1 = sample(s1.t * 4.0);
    double t2 = s1.t * slope0_t / (slope0_t - s1.slope);
    if (!std::isfinite(t2) || t2 <= 0.0) t2 = 0.5 * s1.t;
    t2 = std::min(t2, 8.0 * s1.t);
    Sample best = sample(t2);
    const double allowed = value + opt.monotone_tol * std::max(1.0, std::abs(value));
    if (s1.value < best.value && s1.value <= allowed) best = std::move(s1);
    for (int k = 0; k < 40 && !(best.value <= allowed); ++k) best = sample(0.5 * best.t);
    if (!(best.value <= allowed)) break;

    const double moved = best.t;
    u = std::move(best.a.point);
    g = std::move(best.g);
    WaveField transported = std::move(best.a.velocity);
    value = best.value;
    step = std::clamp(moved, 1e-8, 1.0);

    auto tr = tangent_residual(u, g);
    WaveField r_new = std::move(tr.r);
    lambda = tr.multiplier;
    residual = dual_norm(r_new) / sqrt_c;
    WaveField z_new = precondition(r_new, opt.shift);
    project_tangent(z_new, u, c);
    const double rz_new = real_inner(r_new, z_new);
    double beta = (rz_new - real_inner(r, z_new)) / rz;
    if (!std::isfinite(beta) || beta < 0.0 || ++since_restart >= opt.restart) {
      beta = 0.0;
      since_restart = 0;
    }
    // Transport the previous direction: velocity of the arc at the new point.
    project_tangent(transported, u, c);
    transported *= dir_norm / std::max(std::sqrt(transported.mass()), 1e-300);
    dir = -1.0 * z_new;
    dir.axpy(beta, transported);
    r = std::move(r_new);
    z = std::move(z_new);
    rz = rz_new;

    res.history.push_back(value);
    if (opt.monitor) opt.monitor(u, value, it + 1);
  }

  require_finite(u, "descent iterate");
  res.field = std::move(u);
  res.value = value;
  res.multiplier = lambda;
  res.residual = residual;
  res.iters = it;
  res.converged = residual <= opt.tol;
  return res;
}

}  // namespace rotor
