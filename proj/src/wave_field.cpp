#include "rotor/wave_field.hpp"

#include <cmath>
#include <string>

#include "rotor/error.hpp"

namespace rotor {

WaveField::WaveField(const GridSpec& grid) : grid_(grid), values_(grid.size()) {}

WaveField::WaveField(const GridSpec& grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ValidationError("field length " + std::to_string(values_.size()) +
                          " does not match grid node count " + std::to_string(grid_.size()));
  }
}

double WaveField::mass() const {
  double sum = 0.0;
  for (const auto& v : values_) sum += std::norm(v);
  return sum * grid_.cell_volume();
}

bool WaveField::all_finite() const {
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

WaveField& WaveField::operator+=(const WaveField& other) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

WaveField& WaveField::operator-=(const WaveField& other) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

WaveField& WaveField::operator*=(Complex s) {
  for (auto& v : values_) v *= s;
  return *this;
}

WaveField& WaveField::operator*=(double s) {
  for (auto& v : values_) v *= s;
  return *this;
}

WaveField& WaveField::axpy(Complex s, const WaveField& other) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += s * other.values_[i];
  return *this;
}

WaveField operator+(WaveField a, const WaveField& b) { return a += b; }
WaveField operator-(WaveField a, const WaveField& b) { return a -= b; }
WaveField operator*(Complex s, WaveField a) { return a *= s; }
WaveField operator*(double s, WaveField a) { return a *= s; }

Complex inner(const WaveField& u, const WaveField& v) {
  Complex sum = 0.0;
  const auto* a = u.data();
  const auto* b = v.data();
  for (std::size_t i = 0; i < u.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum * u.grid().cell_volume();
}

double real_inner(const WaveField& u, const WaveField& v) {
  double sum = 0.0;
  const auto* a = u.data();
  const auto* b = v.data();
  for (std::size_t i = 0; i < u.size(); ++i) {
    sum += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  }
  return sum * u.grid().cell_volume();
}

void normalize_mass(WaveField& u, double c) {
  const double m = u.mass();
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw NumericalError("zero_mass", "cannot normalize a field with mass " + std::to_string(m));
  }
  u *= std::sqrt(c / m);
}

void require_finite(const WaveField& u, const char* what) {
  if (!u.all_finite()) {
    throw NumericalError("non_finite", std::string("non-finite values in ") + what);
  }
}

}  // namespace rotor
