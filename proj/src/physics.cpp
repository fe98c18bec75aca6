#include "rotor/physics.hpp"

#include <cmath>
#include <sstream>

#include "rotor/error.hpp"

namespace rotor {

PhysicsParams make_physics(int dim, double a, double p, double omega_mag) {
  if (dim != 2 && dim != 3) throw ValidationError("physics.dim must be 2 or 3");
  if (!(a >= 0.0) || !std::isfinite(a)) throw ValidationError("physics.a must be >= 0");
  if (!(omega_mag >= 0.0 && omega_mag < 1.0)) {
    throw ValidationError("omega_mag must lie in [0,1)");
  }
  const double p_low = 2.0 + 4.0 / dim;
  const double p_high = dim == 2 ? 10.0 : 2.0 * dim / (dim - 2.0);
  const bool upper_ok = dim == 2 ? p <= p_high : p < p_high;
  if (!(p >= p_low - 1e-12) || !upper_ok) {
    std::ostringstream msg;
    msg << "physics.p must satisfy " << p_low << " <= p " << (dim == 2 ? "<= " : "< ") << p_high
        << " for N=" << dim << ", got " << p;
    throw ValidationError(msg.str());
  }
  return PhysicsParams{dim, a, p, omega_mag};
}

}  // namespace rotor
