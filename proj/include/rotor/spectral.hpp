#pragma once

#include <memory>
#include <span>
#include <vector>

#include "rotor/grid.hpp"
#include "rotor/wave_field.hpp"

namespace rotor {

/// FFT plans and precomputed multipliers for one grid.
///
/// Wavenumbers follow the derivative convention: the Nyquist mode of each
/// axis is given wavenumber zero, so |k|^2 = sum_j k_j^2 is exactly the
/// quadratic form of the first-derivative operators. Instances are cached
/// per grid and shared; all members are safe to call concurrently.
class SpectralOps {
 public:
  static const SpectralOps& for_grid(const GridSpec& grid);

  explicit SpectralOps(const GridSpec& grid);
  ~SpectralOps();
  SpectralOps(const SpectralOps&) = delete;
  SpectralOps& operator=(const SpectralOps&) = delete;

  const GridSpec& grid() const { return grid_; }

  /// Unnormalized forward DFT, in place.
  void forward(std::span<Complex> data) const;
  /// Inverse DFT including the 1/M^N factor, in place.
  void inverse(std::span<Complex> data) const;
  /// 1D transforms along a single axis (0-based), in place.
  void forward_axis(std::span<Complex> data, int axis) const;
  void inverse_axis(std::span<Complex> data, int axis) const;

  std::span<const double> axis_coords() const { return coords_; }
  std::span<const double> axis_wavenumbers() const { return wavenumbers_; }
  /// Signed wavenumbers with the Nyquist mode kept at -M/2 dk.
  std::span<const double> axis_wavenumbers_full() const { return wavenumbers_full_; }
  std::span<const double> k_squared() const { return k_squared_; }
  std::span<const double> r_squared() const { return r_squared_; }
  /// 1 inside the 2/3-rule band on every axis, 0 outside.
  std::span<const double> dealias_mask() const { return dealias_mask_; }

  /// Stride of axis j in the row-major layout.
  std::size_t axis_stride(int axis) const;
  /// Axis index of node `flat` along `axis`.
  int axis_index(std::size_t flat, int axis) const;

 private:
  struct Plans;
  GridSpec grid_;
  std::vector<double> coords_;
  std::vector<double> wavenumbers_;
  std::vector<double> wavenumbers_full_;
  std::vector<double> k_squared_;
  std::vector<double> r_squared_;
  std::vector<double> dealias_mask_;
  std::unique_ptr<Plans> plans_;
};

/// Spectral partial derivative along `axis`.
WaveField derivative(const WaveField& u, int axis);
/// Spectral Laplacian.
WaveField laplacian(const WaveField& u);

/// ||grad u||_2^2 via Parseval.
double grad_sq_norm(const WaveField& u);
/// ||x u||_2^2 by pointwise quadrature.
double xweighted_sq_norm(const WaveField& u);
/// ||u||_Sigma-dot^2 = ||grad u||^2 + ||x u||^2.
double sigma_dot_sq(const WaveField& u);

/// L_z u = -i (x1 d/dx2 - x2 d/dx1) u, acting in the (x1, x2) plane.
WaveField apply_Lz(const WaveField& u);
/// |Omega| Re <u, L_z u>, the rotation integral of the energy.
double rotation_expectation(const WaveField& u, double omega_mag);

/// Fraction of the mass carried by modes outside the 2/3-rule band.
double spectral_tail_fraction(const WaveField& u);
/// Fraction of the mass in the outer shell max_j |x_j| > 0.8 L.
double boundary_mass_fraction(const WaveField& u);

/// psi_0 = pi^{-N/4} exp(-|x|^2/2), the normalized oscillator ground state.
WaveField hermite_ground(const GridSpec& grid);
/// First excited oscillator state along x1: sqrt(2) x1 psi_0.
WaveField hermite_first_excited(const GridSpec& grid);
/// Unnormalized vortex mode (x1 + s i x2) exp(-|x|^2/2), s = +1 or -1.
WaveField vortex_mode(const GridSpec& grid, int charge = 1);
/// Unnormalized Gaussian exp(-|x|^2/2).
WaveField gaussian(const GridSpec& grid);

/// l_0 = <psi_0, u> (psi_0 is real).
Complex project_l0(const WaveField& u);

}  // namespace rotor
