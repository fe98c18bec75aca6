#include "rotor/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rotor/error.hpp"

namespace rotor {

namespace {

struct Coefficients {
  int dim;
  double p;
  double linear;     // 1/delta - 1
  double nonlinear;  // 2/(p delta)
};

Coefficients coefficients(int dim, double p) {
  const double delta = dim * (p - 2.0) / (2.0 * p);
  return Coefficients{dim, p, 1.0 / delta - 1.0, 2.0 / (p * delta)};
}

double source(const Coefficients& c, double w) {
  const double wp = w > 0.0 ? std::pow(w, c.p - 1.0) : -std::pow(-w, c.p - 1.0);
  return c.linear * w - c.nonlinear * wp;
}

enum class Shot { undershoot, overshoot, trapped };

struct Trajectory {
  std::vector<double> w;
  std::vector<double> dw;
  Shot outcome = Shot::trapped;
};

// Integrates from the origin until the solution crosses zero (overshoot),
// turns upward while positive (undershoot), or reaches the last node.
Trajectory shoot(const Coefficients& c, double w0, double h, int n, bool keep) {
  Trajectory t;
  if (keep) {
    t.w.assign(n, 0.0);
    t.dw.assign(n, 0.0);
  }
  const double f0 = source(c, w0);
  const double w2 = f0 / (2.0 * c.dim);
  const double fprime = c.linear - c.nonlinear * (c.p - 1.0) * std::pow(w0, c.p - 2.0);
  const double w4 = fprime * w2 / (4.0 * (c.dim + 2.0));
  auto rhs = [&](double r, double y0, double y1) {
    return std::array<double, 2>{y1, source(c, y0) - (c.dim - 1.0) / r * y1};
  };
  double w = 0.0;
  double dw = 0.0;
  auto advance = [&](double r, double r_end, int sub) {
    const double s = (r_end - r) / sub;
    for (int q = 0; q < sub; ++q, r += s) {
      const auto k1 = rhs(r, w, dw);
      const auto k2 = rhs(r + 0.5 * s, w + 0.5 * s * k1[0], dw + 0.5 * s * k1[1]);
      const auto k3 = rhs(r + 0.5 * s, w + 0.5 * s * k2[0], dw + 0.5 * s * k2[1]);
      const auto k4 = rhs(r + s, w + s * k3[0], dw + s * k3[1]);
      w += s / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
      dw += s / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    }
  };
  const double r0 = h / 256.0;
  w = w0 + w2 * r0 * r0 + w4 * r0 * r0 * r0 * r0;
  dw = 2.0 * w2 * r0 + 4.0 * w4 * r0 * r0 * r0;
  advance(r0, h, 512);
  if (keep) {
    t.w[0] = w0;
    t.w[1] = w;
    t.dw[1] = dw;
  }
  for (int i = 1; i + 1 < n; ++i) {
    // The (N-1)/r term is stiff next to the origin; sub-step there.
    advance(i * h, (i + 1) * h, i < 64 ? 8 * ((64 + i - 1) / i) : 8);
    if (!std::isfinite(w) || w <= 0.0) {
      t.outcome = Shot::overshoot;
      return t;
    }
    if (dw > 0.0) {
      t.outcome = Shot::undershoot;
      return t;
    }
    if (keep) {
      t.w[i + 1] = w;
      t.dw[i + 1] = dw;
    }
  }
  return t;
}

// Decaying solution of the linearized radial equation, r^{-nu} K_nu(k r).
double tail_shape(int dim, double k, double r) {
  const double nu = 0.5 * (dim - 2.0);
  if (dim == 3) return std::exp(-k * r) / r;
  return std::pow(r, -nu) * std::cyl_bessel_k(nu, k * r);
}

double tail_shape_slope(int dim, double k, double r) {
  if (dim == 3) return -std::exp(-k * r) * (k * r + 1.0) / (r * r);
  const double nu = 0.5 * (dim - 2.0);
  // d/dr [r^{-nu} K_nu(kr)] = -k r^{-nu} K_{nu+1}(kr)
  return -k * std::pow(r, -nu) * std::cyl_bessel_k(nu + 1.0, k * r);
}

double sphere_area(int dim) { return dim == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi; }

// Composite Simpson over uniform nodes, trapezoid for a leftover interval.
double radial_integral(const std::vector<double>& f, const std::vector<double>& r, int dim, double h) {
  const std::size_t n = f.size();
  auto g = [&](std::size_t i) { return f[i] * std::pow(r[i], dim - 1); };
  const std::size_t intervals = n - 1;
  const std::size_t even = intervals - intervals % 2;
  double sum = 0.0;
  for (std::size_t i = 0; i + 2 <= even; i += 2) sum += g(i) + 4.0 * g(i + 1) + g(i + 2);
  sum *= h / 3.0;
  if (even < intervals) sum += 0.5 * h * (g(even) + g(even + 1));
  return sphere_area(dim) * sum;
}

}  // namespace

double RadialProfile::operator()(double r) const {
  r = std::abs(r);
  const double h = radii[1] - radii[0];
  const std::size_t i = static_cast<std::size_t>(r / h);
  if (i + 1 >= radii.size()) return 0.0;
  const double t = (r - radii[i]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * values[i] + h10 * h * slopes[i] + h01 * values[i + 1] + h11 * h * slopes[i + 1];
}

double default_radius(int dim, double p) {
  return std::max(40.0, 30.0 / std::sqrt(coefficients(dim, p).linear));
}

RadialProfile solve_Wp(int dim, double p, double R, int n_points) {
  if (dim != 2 && dim != 3) throw ValidationError("solve_Wp requires N in {2,3}");
  const double p_star = dim == 2 ? std::numeric_limits<double>::infinity() : 2.0 * dim / (dim - 2.0);
  if (!(p > 2.0 && p < p_star)) throw ValidationError("solve_Wp requires 2 < p < 2*");
  if (R == 0.0) R = default_radius(dim, p);
  if (!(R >= 15.0)) throw ValidationError("solve_Wp requires R >= 15");
  if (n_points < 4096) throw ValidationError("solve_Wp requires n_points >= 4096");

  const Coefficients c = coefficients(dim, p);
  const double h = R / (n_points - 1);

  // Scan upward by doubling; very large W(0) make the series start
  // inaccurate, so the first overshoot closes the bracket.
  double lo = 1e-3;
  if (shoot(c, lo, h, n_points, false).outcome != Shot::undershoot) {
    throw NumericalError("bracket", "shooting bracket for W(0) not found in [1e-3, 1e3]");
  }
  double hi = 2.0 * lo;
  while (shoot(c, hi, h, n_points, false).outcome != Shot::overshoot) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e3) throw NumericalError("bracket", "shooting bracket for W(0) not found in [1e-3, 1e3]");
  }
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const Shot s = shoot(c, mid, h, n_points, false).outcome;
    if (s == Shot::overshoot) hi = mid;
    else lo = mid;
  }

  Trajectory t = shoot(c, lo, h, n_points, true);
  const double w0 = lo;
  RadialProfile prof;
  prof.dim = dim;
  prof.p = p;
  prof.radii.resize(n_points);
  for (int i = 0; i < n_points; ++i) prof.radii[i] = i * h;

  // Valid stretch: positive and decreasing, until the shot separates.
  int last = 0;
  while (last + 1 < n_points && t.w[last + 1] > 0.0 && t.dw[last + 1] < 0.0 && t.w[last + 1] < t.w[last]) ++last;
  const double k = std::sqrt(c.linear);
  // Match where the log-derivative of the shot agrees best with the tail.
  int match = -1;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= last; ++i) {
    if (t.w[i] > 1e-3 * w0 || t.w[i] < 1e-7 * w0) continue;
    const double r = i * h;
    const double mismatch = std::abs(t.dw[i] / t.w[i] - tail_shape_slope(dim, k, r) / tail_shape(dim, k, r));
    if (mismatch < best) {
      best = mismatch;
      match = i;
    }
  }
  if (match < 0) {
    throw NumericalError("shooting", "shooting solution did not decay to 1e-3 W(0) before separating");
  }

  prof.values = t.w;
  prof.slopes = t.dw;
  const double rm = prof.radii[match];
  const double scale = t.w[match] / tail_shape(dim, k, rm);
  for (int i = match + 1; i < n_points; ++i) {
    prof.values[i] = scale * tail_shape(dim, k, prof.radii[i]);
    prof.slopes[i] = scale * tail_shape_slope(dim, k, prof.radii[i]);
  }
  prof.slopes[0] = 0.0;
  prof.matching_radius = rm;

  std::vector<double> sq(n_points), dsq(n_points), pw(n_points);
  for (int i = 0; i < n_points; ++i) {
    sq[i] = prof.values[i] * prof.values[i];
    dsq[i] = prof.slopes[i] * prof.slopes[i];
    pw[i] = std::pow(prof.values[i], p);
  }
  prof.l2_sq = radial_integral(sq, prof.radii, dim, h);
  prof.grad_sq = radial_integral(dsq, prof.radii, dim, h);
  prof.lp_pow = radial_integral(pw, prof.radii, dim, h);
  prof.decay_ok = prof.values.back() < 1e-10 * prof.values.front();
  return prof;
}

double ode_residual(const RadialProfile& prof, double trusted_margin) {
  const Coefficients c = coefficients(prof.dim, prof.p);
  const auto& w = prof.values;
  const std::size_t n = w.size();
  const double h = prof.radii[1] - prof.radii[0];
  const double r_max = prof.radii.back() - trusted_margin;
  // Even extension W(-r) = W(r) supplies stencil points left of the origin.
  auto at = [&](long i) { return w[static_cast<std::size_t>(std::labs(i))]; };
  double worst = 0.0;
  for (long i = 0; i + 3 < static_cast<long>(n) && prof.radii[i] <= r_max; ++i) {
    const double d2 = (2.0 * (at(i + 3) + at(i - 3)) - 27.0 * (at(i + 2) + at(i - 2)) +
                       270.0 * (at(i + 1) + at(i - 1)) - 490.0 * at(i)) / (180.0 * h * h);
    double lap;
    if (i == 0) {
      lap = prof.dim * d2;
    } else {
      const double d1 = (at(i + 3) - at(i - 3) - 9.0 * (at(i + 2) - at(i - 2)) +
                         45.0 * (at(i + 1) - at(i - 1))) / (60.0 * h);
      lap = d2 + (prof.dim - 1.0) / prof.radii[i] * d1;
    }
    worst = std::max(worst, std::abs(lap - source(c, at(i))));
  }
  return worst;
}

double pohozaev_defect(const RadialProfile& prof) {
  const Coefficients c = coefficients(prof.dim, prof.p);
  const double g = prof.grad_sq, m = prof.l2_sq, pp = prof.lp_pow;
  const double nehari = std::abs(g + c.linear * m - c.nonlinear * pp) / (c.nonlinear * pp);
  const double lhs = 0.5 * (prof.dim - 2.0) * g + 0.5 * prof.dim * c.linear * m;
  const double rhs = prof.dim / prof.p * c.nonlinear * pp;
  return std::max(nehari, std::abs(lhs - rhs) / rhs);
}

double gn_constant(const RadialProfile& prof) {
  if (!prof.decay_ok) throw NumericalError("decay", "profile did not decay; GN constant unreliable");
  return std::pow(prof.p / (2.0 * std::pow(prof.l2_sq, 0.5 * (prof.p - 2.0))), 1.0 / prof.p);
}

}  // namespace rotor
