#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "rotor/grid.hpp"
#include "rotor/groundstate.hpp"
#include "rotor/physics.hpp"

namespace rotor {

struct DynamicsConfig {
  double T = 0.0;  ///< 0 selects 10 trap periods
  double dt = 0.0; ///< 0 selects default_dt
  double sample_every = 0.1;
  int trials = 8;
  double perturbation_scale = 1e-2;
};

struct SaddleConfig {
  int nodes = 33;
  int sweeps = 600;
  int climb_after = 100;
  double band_tol = 2e-3;
  double tol = 1e-7;
};

/// Everything a run needs. `echo` holds every key with the value in effect
/// (defaults included), in "section.key" form.
struct RunConfig {
  GridSpec grid;
  PhysicsParams physics;
  SolverConfig solver;
  DynamicsConfig dynamics;
  SaddleConfig saddle;
  std::string init_file;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  int threads = 1;
  std::map<std::string, std::string> echo;
};

/// key = value lines under [grid] [physics] [constraint] [solver]
/// [dynamics] [saddle]; seed, output_dir and threads before any section.
/// '#' starts a comment. Unknown keys, malformed values and bound
/// violations throw ValidationError("line K: ...").
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace rotor
