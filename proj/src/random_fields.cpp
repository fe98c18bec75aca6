#include "rotor/random.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "rotor/spectral.hpp"

namespace rotor {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, Stream stream, std::uint64_t substream)
    : key_(splitmix(splitmix(seed) ^ splitmix(static_cast<std::uint64_t>(stream) << 32) ^
                    splitmix(substream + 0x632be59bd9b4e019ULL))) {}

CounterRng::result_type CounterRng::operator()() {
  return splitmix(key_ ^ splitmix(counter_++));
}

WaveField random_smooth_field(const GridSpec& grid, CounterRng& rng, const RandomFieldOptions& options) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto& ops = SpectralOps::for_grid(grid);
  const auto x = ops.axis_coords();

  WaveField out(grid);
  for (int mode = 0; mode < options.modes; ++mode) {
    const Complex amp(normal(rng), normal(rng));
    const double width = options.min_width + (options.max_width - options.min_width) * unit(rng);
    const int charge = static_cast<int>(unit(rng) * (2 * options.max_charge + 1)) - options.max_charge;
    double center[3] = {0.0, 0.0, 0.0};
    double wave[3] = {0.0, 0.0, 0.0};
    for (int ax = 0; ax < grid.dim; ++ax) {
      center[ax] = options.max_center * (2.0 * unit(rng) - 1.0) / std::sqrt(grid.dim);
      wave[ax] = options.max_wavenumber * (2.0 * unit(rng) - 1.0) / std::sqrt(grid.dim);
    }
    const double inv_w2 = 1.0 / (width * width);
    for (std::size_t i = 0; i < out.size(); ++i) {
      double r2 = 0.0, phase = 0.0, y[3] = {0.0, 0.0, 0.0};
      for (int ax = 0; ax < grid.dim; ++ax) {
        y[ax] = x[ops.axis_index(i, ax)] - center[ax];
        r2 += y[ax] * y[ax];
        phase += wave[ax] * x[ops.axis_index(i, ax)];
      }
      Complex poly = 1.0;
      const Complex z(y[0], charge >= 0 ? y[1] : -y[1]);
      for (int q = 0; q < std::abs(charge); ++q) poly *= z / width;
      out[i] += amp * poly * std::polar(std::exp(-0.5 * r2 * inv_w2), phase);
    }
  }
  return out;
}

}  // namespace rotor
