#pragma once

#include <cstddef>

namespace rotor {

/// Uniform periodic box [-L, L)^N with M nodes per axis.
struct GridSpec {
  int dim = 2;
  int points_per_axis = 128;
  double half_width = 8.0;

  double spacing() const { return 2.0 * half_width / points_per_axis; }
  double cell_volume() const;
  std::size_t size() const;
  /// Coordinate of node index k along any axis.
  double coord(int k) const { return -half_width + k * spacing(); }

  bool operator==(const GridSpec&) const = default;
};

/// Validated constructor. Throws ValidationError for dim not in {2,3},
/// M not a power of two >= 16, or L <= 0.
GridSpec make_grid(int dim, int points_per_axis, double half_width);

}  // namespace rotor
