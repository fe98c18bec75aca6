#include "rotor/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rotor/error.hpp"

namespace rotor {

bool frequency_condition(const PhysicsParams& params) {
  const double pd = params.p_delta();
  if (!(pd > 2.0)) return false;
  const double ratio = 2.0 / pd;
  return params.omega_mag < std::sqrt(1.0 - ratio * ratio);
}

RotationConstants compute_constants(const PhysicsParams& params, double r, double gn_const) {
  const double w = params.omega_mag;
  if (!(w > 0.0 && w < 1.0)) throw ValidationError("compute_constants requires |Omega| in (0,1)");
  if (!(r > 0.0)) throw ValidationError("compute_constants requires r > 0");
  if (!(gn_const > 0.0)) throw ValidationError("compute_constants requires gn_const > 0");

  RotationConstants k;
  k.gn_const = gn_const;
  k.nu = (1.0 - w) / 4.0;
  k.mu = (1.0 + w) / 2.0;
  k.eps0 = (k.mu + k.nu) / (k.mu - k.nu) * w;
  k.c_star = std::min(0.5 * (1.0 - k.eps0), 0.5 - w * w / (2.0 * k.eps0));
  k.c_upper = std::max(0.5 * (1.0 + k.eps0), 0.5 + w * w / (2.0 * k.eps0));

  const int n = params.dim;
  const double p = params.p;
  const double d = params.delta_p();
  const double pd = params.p_delta();
  const double cp = std::pow(gn_const, p);
  const double r_pow = std::pow(r, 0.5 * (pd - 2.0));
  const double expo = 2.0 / (p * (1.0 - d));

  const double first = (1.0 - w) * r / (4.0 * n);
  double second = std::numeric_limits<double>::infinity();
  double third = std::numeric_limits<double>::infinity();
  if (params.a > 0.0) {
    second = std::pow(p * std::pow(1.0 - w, 3) / (16.0 * (1.0 + 3.0 * w) * params.a * cp * r_pow), expo);
    third = std::pow((1.0 - w * w) / (2.0 * (1.0 + 3.0 * w) * params.a * cp * r_pow), expo);
  }
  k.c0 = std::min({first, second, third});

  if (frequency_condition(params)) {
    const double lo = pd * w * w / (pd + 2.0);
    const double hi = 1.0 - 2.0 / pd;
    const double eps1 = 0.5 * (lo + hi);
    k.eps1 = eps1;
    k.c1 = 0.5 - 1.0 / pd - 0.5 * eps1;
    k.c2 = 0.5 + 1.0 / pd - w * w / (2.0 * eps1);
    k.c_omega = std::min(*k.c1, *k.c2);
  }
  return k;
}

double omega_lower_bound(const PhysicsParams& params, const RotationConstants& k, double r, double c) {
  const double p = params.p;
  const double d = params.delta_p();
  return params.dim * (k.c_star - params.a * std::pow(k.gn_const, p) *
                                      std::pow(r, 0.5 * (params.p_delta() - 2.0)) *
                                      std::pow(c, 0.5 * p * (1.0 - d)));
}

}  // namespace rotor
