#include "rotor/functionals.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "rotor/error.hpp"
#include "rotor/spectral.hpp"

namespace rotor {

namespace {

// Band-limited interpolation weight of node j for a target offset d = y - x_j
// (Nyquist mode split evenly between +-M/2).
double dirichlet_weight(double d, int m, double half_width) {
  const double s = std::numbers::pi * d / (2.0 * half_width);
  const double sn = std::sin(s);
  if (std::abs(sn) > 1e-9) {
    return (std::sin((m - 1) * s) / sn + std::cos(m * s)) / m;
  }
  const double dk = std::numbers::pi / half_width;
  double sum = 1.0 + std::cos(0.5 * m * dk * d);
  for (int q = 1; q < m / 2; ++q) sum += 2.0 * std::cos(q * dk * d);
  return sum / m;
}

// Row i holds the weights producing u(tau x_i) from the samples u(x_j);
// targets outside the box get a zero row.
std::vector<double> resampling_matrix(const GridSpec& grid, double tau) {
  const int m = grid.points_per_axis;
  const double L = grid.half_width;
  std::vector<double> mat(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double y = tau * grid.coord(i);
    if (y < -L || y > L) continue;
    for (int j = 0; j < m; ++j) mat[static_cast<std::size_t>(i) * m + j] = dirichlet_weight(y - grid.coord(j), m, L);
  }
  return mat;
}

void apply_along_axis(std::vector<Complex>& data, const std::vector<double>& mat, const SpectralOps& ops,
                      int axis) {
  const std::size_t m = static_cast<std::size_t>(ops.grid().points_per_axis);
  const std::size_t stride = ops.axis_stride(axis);
  const std::size_t block = stride * m;
  std::vector<Complex> line(m), out(m);
  for (std::size_t base = 0; base < data.size(); base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      for (std::size_t j = 0; j < m; ++j) line[j] = data[base + off + j * stride];
      for (std::size_t i = 0; i < m; ++i) {
        const double* row = &mat[i * m];
        Complex acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) acc += row[j] * line[j];
        out[i] = acc;
      }
      for (std::size_t i = 0; i < m; ++i) data[base + off + i * stride] = out[i];
    }
  }
}

}  // namespace

WaveField dilate(const WaveField& u, double tau, double leak_tol) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("dilation factor must be positive");
  if (tau == 1.0) return u;
  const auto& ops = SpectralOps::for_grid(u.grid());
  const auto mat = resampling_matrix(u.grid(), tau);
  std::vector<Complex> data(u.values().begin(), u.values().end());
  for (int ax = 0; ax < u.grid().dim; ++ax) apply_along_axis(data, mat, ops, ax);
  WaveField out(u.grid(), std::move(data));
  out *= std::pow(tau, 0.5 * u.grid().dim);

  const double m0 = u.mass();
  if (m0 > 0.0) {
    const double leak = std::abs(out.mass() - m0) / m0;
    // Compressed fields can keep their mass while losing resolution, so the
    // spectral tail is monitored as well.
    const double tail = tau > 1.0 ? spectral_tail_fraction(out) : 0.0;
    if (leak > leak_tol || tail > leak_tol) {
      std::ostringstream msg;
      msg << "dilation by tau=" << tau << " is not resolved on the box: relative mass change " << leak
          << ", spectral tail fraction " << tail;
      throw NumericalError("tail_leak", msg.str());
    }
  }
  return out;
}

WaveField kappa(const WaveField& u, double theta, double leak_tol) {
  return dilate(u, std::exp(theta), leak_tol);
}

DilationNorms dilation_norms(const WaveField& u, const PhysicsParams& params) {
  return DilationNorms{grad_sq_norm(u), xweighted_sq_norm(u), lp_norm_pow(u, params.p),
                       rotation_expectation(u, params.omega_mag)};
}

double tilde_I(const DilationNorms& n, double theta, const PhysicsParams& params) {
  return 0.5 * std::exp(2.0 * theta) * n.grad_sq + 0.5 * std::exp(-2.0 * theta) * n.x_sq -
         2.0 * params.a / params.p * std::exp(params.p_delta() * theta) * n.lp_pow - n.rotation;
}

double tilde_I(const WaveField& u, double theta, const PhysicsParams& params) {
  return tilde_I(dilation_norms(u, params), theta, params);
}

double tilde_I_resampled(const WaveField& u, double theta, const PhysicsParams& params) {
  return energy(kappa(u, theta), params).total;
}

double tilde_I_slope(const DilationNorms& n, double theta, const PhysicsParams& params) {
  const double pd = params.p_delta();
  return std::exp(2.0 * theta) * n.grad_sq - std::exp(-2.0 * theta) * n.x_sq -
         2.0 * params.a / params.p * pd * std::exp(pd * theta) * n.lp_pow;
}

}  // namespace rotor
