#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rotor/oracle.hpp"
#include "rotor/wave_field.hpp"

namespace rotor {

/// Outcome of one inequality suite over seeded random fields. `worst` is
/// the largest lhs/rhs ratio seen (<= 1 when the inequality holds).
struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  double worst = 0.0;
  std::string detail;
  bool passed() const { return cases > 0 && failures == 0; }
};

/// ||u||^2 <= (2/N) ||grad u|| ||x u|| on random fields, with equality for
/// the Gaussian within 1e-8.
SuiteResult weinstein_suite(const GridSpec& grid, int n_fields, std::uint64_t seed);

/// Gagliardo-Nirenberg with the oracle constant on random fields; the
/// sampled extremizer must reach ratio 1 within 1e-3.
SuiteResult gn_suite(const GridSpec& grid, double p, int n_fields, std::uint64_t seed);

/// |<u, Omega.L u>| <= ||(Omega ^ x) u|| ||grad u|| <= |Omega|^2/(2 eps) ||xu||^2 + eps/2 ||grad u||^2
/// with |Omega| and eps drawn per field.
SuiteResult rotation_chain_suite(const GridSpec& grid, int n_fields, std::uint64_t seed);

/// C_* ||u||^2 <= ||u||_{Omega,1} <= C^* ||u||^2 and, where the frequency
/// condition holds, C_Omega ||u||^2 <= ||u||_{Omega,2}, for |Omega| in
/// {0.1, 1/3, 0.6}.
SuiteResult sandwich_suite(const GridSpec& grid, double p, int n_fields, std::uint64_t seed);

/// Radial profile sampled onto the grid (zero beyond its last radius).
WaveField sample_radial(const GridSpec& grid, const RadialProfile& profile);

/// The five suites at desk scale: 2D fields on M=64, L=8 (sandwiches at
/// p = 6, where the frequency condition admits the second norm) and 3D GN
/// on 32^3.
std::vector<SuiteResult> run_property_suites(int n_fields, std::uint64_t seed);

}  // namespace rotor
