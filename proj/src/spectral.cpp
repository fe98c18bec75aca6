#include "rotor/spectral.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "rotor/error.hpp"

namespace rotor {

namespace {

// FFTW's planner is not thread-safe; execution of existing plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::span<Complex> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

struct SpectralOps::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::vector<fftw_plan> axis_forward;
  std::vector<fftw_plan> axis_backward;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    for (auto p : axis_forward) fftw_destroy_plan(p);
    for (auto p : axis_backward) fftw_destroy_plan(p);
  }
};

const SpectralOps& SpectralOps::for_grid(const GridSpec& grid) {
  static std::mutex cache_mutex;
  static std::map<std::tuple<int, int, std::uint64_t>, std::unique_ptr<SpectralOps>> cache;
  const auto key = std::make_tuple(grid.dim, grid.points_per_axis,
                                   std::bit_cast<std::uint64_t>(grid.half_width));
  std::lock_guard lock(cache_mutex);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<SpectralOps>(grid)).first;
  return *it->second;
}

SpectralOps::SpectralOps(const GridSpec& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  const int m = grid.points_per_axis;
  const int n = grid.dim;
  const double dk = std::numbers::pi / grid.half_width;

  coords_.resize(m);
  wavenumbers_.resize(m);
  wavenumbers_full_.resize(m);
  std::vector<double> mask_1d(m);
  for (int i = 0; i < m; ++i) {
    coords_[i] = grid.coord(i);
    const int freq = i < m / 2 ? i : i - m;
    wavenumbers_full_[i] = freq * dk;
    wavenumbers_[i] = (i == m / 2) ? 0.0 : freq * dk;
    mask_1d[i] = (3 * std::abs(freq) < m) ? 1.0 : 0.0;
  }

  const std::size_t total = grid.size();
  k_squared_.resize(total);
  r_squared_.resize(total);
  dealias_mask_.resize(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    double k2 = 0.0, r2 = 0.0, mask = 1.0;
    for (int ax = 0; ax < n; ++ax) {
      const int idx = axis_index(flat, ax);
      k2 += wavenumbers_[idx] * wavenumbers_[idx];
      r2 += coords_[idx] * coords_[idx];
      mask *= mask_1d[idx];
    }
    k_squared_[flat] = k2;
    r_squared_[flat] = r2;
    dealias_mask_[flat] = mask;
  }

  std::vector<Complex> scratch(total);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::vector<int> dims(n, m);

  std::lock_guard lock(planner_mutex());
  plans_->forward = fftw_plan_dft(n, dims.data(), buf, buf, FFTW_FORWARD, flags);
  plans_->backward = fftw_plan_dft(n, dims.data(), buf, buf, FFTW_BACKWARD, flags);
  for (int ax = 0; ax < n; ++ax) {
    fftw_iodim transform{m, static_cast<int>(axis_stride(ax)), static_cast<int>(axis_stride(ax))};
    std::vector<fftw_iodim> loops;
    for (int other = 0; other < n; ++other) {
      if (other == ax) continue;
      const int s = static_cast<int>(axis_stride(other));
      loops.push_back(fftw_iodim{m, s, s});
    }
    plans_->axis_forward.push_back(fftw_plan_guru_dft(1, &transform, static_cast<int>(loops.size()),
                                                      loops.data(), buf, buf, FFTW_FORWARD, flags));
    plans_->axis_backward.push_back(fftw_plan_guru_dft(1, &transform, static_cast<int>(loops.size()),
                                                       loops.data(), buf, buf, FFTW_BACKWARD, flags));
  }
  if (!plans_->forward || !plans_->backward) {
    throw NumericalError("fft_plan", "FFTW failed to create plans for the grid");
  }
}

SpectralOps::~SpectralOps() = default;

std::size_t SpectralOps::axis_stride(int axis) const {
  std::size_t s = 1;
  for (int d = axis + 1; d < grid_.dim; ++d) s *= static_cast<std::size_t>(grid_.points_per_axis);
  return s;
}

int SpectralOps::axis_index(std::size_t flat, int axis) const {
  return static_cast<int>((flat / axis_stride(axis)) % static_cast<std::size_t>(grid_.points_per_axis));
}

void SpectralOps::forward(std::span<Complex> data) const {
  fftw_execute_dft(plans_->forward, as_fftw(data), as_fftw(data));
}

void SpectralOps::inverse(std::span<Complex> data) const {
  fftw_execute_dft(plans_->backward, as_fftw(data), as_fftw(data));
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

void SpectralOps::forward_axis(std::span<Complex> data, int axis) const {
  fftw_execute_dft(plans_->axis_forward.at(axis), as_fftw(data), as_fftw(data));
}

void SpectralOps::inverse_axis(std::span<Complex> data, int axis) const {
  fftw_execute_dft(plans_->axis_backward.at(axis), as_fftw(data), as_fftw(data));
  const double scale = 1.0 / grid_.points_per_axis;
  for (auto& v : data) v *= scale;
}

WaveField derivative(const WaveField& u, int axis) {
  const auto& ops = SpectralOps::for_grid(u.grid());
  WaveField out = u;
  auto data = out.values();
  ops.forward_axis(data, axis);
  const auto k = ops.axis_wavenumbers();
  const std::size_t stride = ops.axis_stride(axis);
  const std::size_t m = static_cast<std::size_t>(u.grid().points_per_axis);
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] *= Complex(0.0, k[(i / stride) % m]);
  }
  ops.inverse_axis(data, axis);
  return out;
}

WaveField laplacian(const WaveField& u) {
  const auto& ops = SpectralOps::for_grid(u.grid());
  WaveField out = u;
  auto data = out.values();
  ops.forward(data);
  const auto k2 = ops.k_squared();
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= -k2[i];
  ops.inverse(data);
  return out;
}

double grad_sq_norm(const WaveField& u) {
  const auto& ops = SpectralOps::for_grid(u.grid());
  std::vector<Complex> hat(u.values().begin(), u.values().end());
  ops.forward(hat);
  const auto k2 = ops.k_squared();
  double sum = 0.0;
  for (std::size_t i = 0; i < hat.size(); ++i) sum += k2[i] * std::norm(hat[i]);
  return sum * u.grid().cell_volume() / static_cast<double>(hat.size());
}

double xweighted_sq_norm(const WaveField& u) {
  const auto r2 = SpectralOps::for_grid(u.grid()).r_squared();
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += r2[i] * std::norm(u[i]);
  return sum * u.grid().cell_volume();
}

double sigma_dot_sq(const WaveField& u) { return grad_sq_norm(u) + xweighted_sq_norm(u); }

WaveField apply_Lz(const WaveField& u) {
  const auto& ops = SpectralOps::for_grid(u.grid());
  const WaveField d1 = derivative(u, 0);
  const WaveField d2 = derivative(u, 1);
  const auto x = ops.axis_coords();
  const std::size_t s0 = ops.axis_stride(0), s1 = ops.axis_stride(1);
  const std::size_t m = static_cast<std::size_t>(u.grid().points_per_axis);
  WaveField out(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x1 = x[(i / s0) % m];
    const double x2 = x[(i / s1) % m];
    out[i] = Complex(0.0, -1.0) * (x1 * d2[i] - x2 * d1[i]);
  }
  return out;
}

double rotation_expectation(const WaveField& u, double omega_mag) {
  if (omega_mag == 0.0) return 0.0;
  return omega_mag * real_inner(u, apply_Lz(u));
}

double spectral_tail_fraction(const WaveField& u) {
  const auto& ops = SpectralOps::for_grid(u.grid());
  std::vector<Complex> hat(u.values().begin(), u.values().end());
  ops.forward(hat);
  const auto mask = ops.dealias_mask();
  double total = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < hat.size(); ++i) {
    const double w = std::norm(hat[i]);
    total += w;
    if (mask[i] == 0.0) tail += w;
  }
  return total > 0.0 ? tail / total : 0.0;
}

double boundary_mass_fraction(const WaveField& u) {
  const auto& ops = SpectralOps::for_grid(u.grid());
  const double edge = 0.8 * u.grid().half_width;
  const auto x = ops.axis_coords();
  double total = 0.0, outer = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double w = std::norm(u[i]);
    total += w;
    bool in_shell = false;
    for (int ax = 0; ax < u.grid().dim && !in_shell; ++ax) {
      in_shell = std::abs(x[ops.axis_index(i, ax)]) > edge;
    }
    if (in_shell) outer += w;
  }
  return total > 0.0 ? outer / total : 0.0;
}

namespace {

template <typename Fn>
WaveField sample(const GridSpec& grid, Fn&& fn) {
  const auto& ops = SpectralOps::for_grid(grid);
  const auto x = ops.axis_coords();
  WaveField out(grid);
  double pt[3] = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int ax = 0; ax < grid.dim; ++ax) pt[ax] = x[ops.axis_index(i, ax)];
    out[i] = fn(pt);
  }
  return out;
}

}  // namespace

WaveField gaussian(const GridSpec& grid) {
  return sample(grid, [&](const double* x) {
    double r2 = 0.0;
    for (int ax = 0; ax < grid.dim; ++ax) r2 += x[ax] * x[ax];
    return Complex(std::exp(-0.5 * r2), 0.0);
  });
}

WaveField hermite_ground(const GridSpec& grid) {
  WaveField g = gaussian(grid);
  g *= std::pow(std::numbers::pi, -0.25 * grid.dim);
  return g;
}

WaveField hermite_first_excited(const GridSpec& grid) {
  const double norm = std::sqrt(2.0) * std::pow(std::numbers::pi, -0.25 * grid.dim);
  return sample(grid, [&](const double* x) {
    double r2 = 0.0;
    for (int ax = 0; ax < grid.dim; ++ax) r2 += x[ax] * x[ax];
    return Complex(norm * x[0] * std::exp(-0.5 * r2), 0.0);
  });
}

WaveField vortex_mode(const GridSpec& grid, int charge) {
  const double s = charge >= 0 ? 1.0 : -1.0;
  return sample(grid, [&](const double* x) {
    double r2 = 0.0;
    for (int ax = 0; ax < grid.dim; ++ax) r2 += x[ax] * x[ax];
    return Complex(x[0], s * x[1]) * std::exp(-0.5 * r2);
  });
}

Complex project_l0(const WaveField& u) { return inner(hermite_ground(u.grid()), u); }

}  // namespace rotor
