#include "rotor/grid.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "rotor/error.hpp"

namespace rotor {

double GridSpec::cell_volume() const { return std::pow(spacing(), dim); }

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int d = 0; d < dim; ++d) n *= static_cast<std::size_t>(points_per_axis);
  return n;
}

GridSpec make_grid(int dim, int points_per_axis, double half_width) {
  if (dim != 2 && dim != 3) {
    throw ValidationError("grid.dim must be 2 or 3, got " + std::to_string(dim));
  }
  if (points_per_axis < 16 || !std::has_single_bit(static_cast<unsigned>(points_per_axis))) {
    throw ValidationError("grid.points must be a power of two >= 16, got " +
                          std::to_string(points_per_axis));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ValidationError("grid.half_width must be positive and finite");
  }
  // M^N complex doubles must be addressable with room for work arrays.
  const double bytes = std::pow(static_cast<double>(points_per_axis), dim) * sizeof(std::complex<double>);
  if (bytes > static_cast<double>(std::numeric_limits<std::ptrdiff_t>::max()) / 16.0) {
    throw ValidationError("grid too large: M^N nodes exceed addressable memory");
  }
  return GridSpec{dim, points_per_axis, half_width};
}

}  // namespace rotor
