#pragma once

#include <complex>
#include <span>
#include <vector>

#include "rotor/grid.hpp"

namespace rotor {

using Complex = std::complex<double>;

/// Complex field sampled on a grid, row-major over (x1, ..., xN).
class WaveField {
 public:
  explicit WaveField(const GridSpec& grid);
  WaveField(const GridSpec& grid, std::vector<Complex> values);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  Complex* data() { return values_.data(); }
  const Complex* data() const { return values_.data(); }

  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  /// Discrete ||u||_2^2.
  double mass() const;
  bool all_finite() const;

  WaveField& operator+=(const WaveField& other);
  WaveField& operator-=(const WaveField& other);
  WaveField& operator*=(Complex s);
  WaveField& operator*=(double s);
  /// this += s * other
  WaveField& axpy(Complex s, const WaveField& other);

 private:
  GridSpec grid_;
  std::vector<Complex> values_;
};

WaveField operator+(WaveField a, const WaveField& b);
WaveField operator-(WaveField a, const WaveField& b);
WaveField operator*(Complex s, WaveField a);
WaveField operator*(double s, WaveField a);

/// Discrete L^2 inner product <u, v> = h^N sum conj(u) v.
Complex inner(const WaveField& u, const WaveField& v);
/// Re <u, v>, the real inner product used for gradients and tangent spaces.
double real_inner(const WaveField& u, const WaveField& v);

/// Rescales u in place to mass c. Throws NumericalError on a zero field.
void normalize_mass(WaveField& u, double c);

/// Throws NumericalError naming `what` when the field has NaN/Inf entries.
void require_finite(const WaveField& u, const char* what);

}  // namespace rotor
