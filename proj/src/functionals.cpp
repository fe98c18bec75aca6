#include "rotor/functionals.hpp"

#include <cmath>
#include <string>

#include "rotor/error.hpp"
#include "rotor/spectral.hpp"

namespace rotor {

namespace {

void check_component(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw NumericalError("non_finite", std::string("energy component '") + name + "' is not finite");
  }
}

bool even_integer(double p) { return p == std::round(p) && static_cast<long>(p) % 2 == 0; }

double abs_pow(double abs_sq, double p) {
  if (p == 4.0) return abs_sq * abs_sq;
  if (p == 6.0) return abs_sq * abs_sq * abs_sq;
  return std::pow(abs_sq, 0.5 * p);
}

struct Pieces {
  EnergyBreakdown e;
  double mass = 0.0;
  double lp = 0.0;
};

// Shared evaluation. When `h_u` is non-null it receives the gradient field.
Pieces evaluate(const WaveField& u, const PhysicsParams& params, WaveField* h_u, const TermWeights& wt = {}) {
  const auto& ops = SpectralOps::for_grid(u.grid());
  const double vol = u.grid().cell_volume();
  const auto k2 = ops.k_squared();
  const auto r2 = ops.r_squared();
  const std::size_t n = u.size();

  std::vector<Complex> hat(u.values().begin(), u.values().end());
  ops.forward(hat);
  double grad_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) grad_sum += k2[i] * std::norm(hat[i]);
  const double grad_sq = grad_sum * vol / static_cast<double>(n);

  double x_sum = 0.0, m_sum = 0.0, lp_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a2 = std::norm(u[i]);
    m_sum += a2;
    x_sum += r2[i] * a2;
    lp_sum += abs_pow(a2, params.p);
  }

  Pieces out;
  out.mass = m_sum * vol;
  out.lp = lp_sum * vol;
  const double x_sq = x_sum * vol;

  double rotation = 0.0;
  WaveField lz_u(u.grid());
  if (params.omega_mag != 0.0) {
    lz_u = apply_Lz(u);
    rotation = params.omega_mag * real_inner(u, lz_u);
  }

  auto& e = out.e;
  e.kinetic = 0.5 * grad_sq;
  e.trap = 0.5 * x_sq;
  e.rotation = rotation;
  e.nonlinear = 2.0 * params.a / params.p * out.lp;
  check_component(e.kinetic, "kinetic");
  check_component(e.trap, "trap");
  check_component(e.rotation, "rotation");
  check_component(e.nonlinear, "nonlinear");
  e.total = wt.kinetic * e.kinetic + wt.trap * e.trap - wt.nonlinear * e.nonlinear - e.rotation;
  e.sigma_dot = grad_sq + x_sq;
  e.pohozaev = 0.5 * grad_sq - 0.5 * x_sq - params.a * params.delta_p() * out.lp;
  e.omega_est = out.mass > 0.0 ? (0.5 * e.sigma_dot - rotation - params.a * out.lp) / out.mass : 0.0;

  if (h_u != nullptr) {
    // -1/2 Lap u
    for (std::size_t i = 0; i < n; ++i) hat[i] *= 0.5 * wt.kinetic * k2[i];
    ops.inverse(hat);
    // a |u|^{p-2} u
    std::vector<Complex> force(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a2 = std::norm(u[i]);
      const double w = params.p == 4.0 ? a2 : std::pow(a2, 0.5 * params.p - 1.0);
      force[i] = wt.nonlinear * params.a * w * u[i];
    }
    if (params.a != 0.0 && even_integer(params.p)) {
      const auto mask = ops.dealias_mask();
      ops.forward(force);
      for (std::size_t i = 0; i < n; ++i) force[i] *= mask[i];
      ops.inverse(force);
    }
    WaveField& out_field = *h_u;
    out_field = WaveField(u.grid());
    for (std::size_t i = 0; i < n; ++i) {
      out_field[i] = hat[i] + 0.5 * wt.trap * r2[i] * u[i] - force[i];
    }
    if (params.omega_mag != 0.0) out_field.axpy(-params.omega_mag, lz_u);
    require_finite(out_field, "energy gradient");
  }
  return out;
}

}  // namespace

double lp_norm_pow(const WaveField& u, double p) {
  double sum = 0.0;
  for (const auto& v : u.values()) sum += abs_pow(std::norm(v), p);
  return sum * u.grid().cell_volume();
}

EnergyBreakdown energy(const WaveField& u, const PhysicsParams& params) {
  return evaluate(u, params, nullptr).e;
}

double pohozaev_Q(const WaveField& u, const PhysicsParams& params) {
  return 0.5 * grad_sq_norm(u) - 0.5 * xweighted_sq_norm(u) -
         params.a * params.delta_p() * lp_norm_pow(u, params.p);
}

double lagrange_omega(const WaveField& u, const PhysicsParams& params) {
  const double c = u.mass();
  if (!(c > 0.0)) throw NumericalError("zero_mass", "Lagrange multiplier of a zero-mass field");
  return (0.5 * sigma_dot_sq(u) - rotation_expectation(u, params.omega_mag) -
          params.a * lp_norm_pow(u, params.p)) / c;
}

HamiltonianEval apply_hamiltonian(const WaveField& u, const PhysicsParams& params) {
  HamiltonianEval out{EnergyBreakdown{}, WaveField(u.grid())};
  out.energy = evaluate(u, params, &out.h_u).e;
  return out;
}

HamiltonianEval apply_hamiltonian(const WaveField& u, const PhysicsParams& params, const TermWeights& weights) {
  HamiltonianEval out{EnergyBreakdown{}, WaveField(u.grid())};
  out.energy = evaluate(u, params, &out.h_u, weights).e;
  return out;
}

GnCheck gn_check(const WaveField& u, const PhysicsParams& params, double gn_const) {
  const double lp = lp_norm_pow(u, params.p);
  const double mass = u.mass();
  GnCheck out;
  if (mass == 0.0) return out;
  const double d = params.delta_p();
  out.lhs = std::pow(lp, 1.0 / params.p);
  out.rhs = gn_const * std::pow(grad_sq_norm(u), 0.5 * d) * std::pow(mass, 0.5 * (1.0 - d));
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-8);
  return out;
}

RotationChain rotation_interpolation_check(const WaveField& u, double omega_mag, double eps) {
  if (!(eps > 0.0)) throw ValidationError("rotation interpolation requires eps > 0");
  const double grad = grad_sq_norm(u);
  const double xsq = xweighted_sq_norm(u);
  // (Omega ^ x) has magnitude |Omega| sqrt(x1^2 + x2^2).
  const auto& ops = SpectralOps::for_grid(u.grid());
  const auto x = ops.axis_coords();
  double planar = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x1 = x[ops.axis_index(i, 0)];
    const double x2 = x[ops.axis_index(i, 1)];
    planar += (x1 * x1 + x2 * x2) * std::norm(u[i]);
  }
  planar *= u.grid().cell_volume();

  RotationChain out;
  out.lhs = std::abs(rotation_expectation(u, omega_mag));
  out.mid = omega_mag * std::sqrt(planar) * std::sqrt(grad);
  out.rhs = omega_mag * omega_mag / (2.0 * eps) * xsq + 0.5 * eps * grad;
  const double slack = 1e-8 * (out.rhs + 1e-300);
  out.holds = out.lhs <= out.mid + slack && out.mid <= out.rhs + slack;
  return out;
}

double norm_omega1(const WaveField& u, double omega_mag) {
  return 0.5 * sigma_dot_sq(u) - rotation_expectation(u, omega_mag);
}

double norm_omega2(const WaveField& u, const PhysicsParams& params) {
  const double pd = params.p_delta();
  if (!(pd > 2.0)) {
    throw ValidationError("norm_omega2 requires p delta_p > 2 (p > 2 + 4/N)");
  }
  return (0.5 - 1.0 / pd) * grad_sq_norm(u) + (0.5 + 1.0 / pd) * xweighted_sq_norm(u) -
         rotation_expectation(u, params.omega_mag);
}

}  // namespace rotor
