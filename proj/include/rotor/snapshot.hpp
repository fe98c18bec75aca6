#pragma once

#include <string>

#include "rotor/physics.hpp"
#include "rotor/wave_field.hpp"

namespace rotor {

/// Field plus the run parameters stored alongside it.
struct Snapshot {
  WaveField field;
  PhysicsParams params;
  double c = 0.0;
};

/// RGPE1, little-endian: "RGPE1", u8 dim, u32 M, f64 L, a, p, omega_mag, c,
/// then M^N (re, im) f64 pairs in row-major order.
void write_snapshot(const std::string& path, const WaveField& field, const PhysicsParams& params, double c);
Snapshot read_snapshot(const std::string& path);

std::string encode_snapshot(const WaveField& field, const PhysicsParams& params, double c);
Snapshot decode_snapshot(const std::string& bytes);

}  // namespace rotor
