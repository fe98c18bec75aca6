#pragma once

#include <cstdint>
#include <limits>

#include "rotor/wave_field.hpp"

namespace rotor {

/// Purpose-specific random streams derived from the single run seed.
enum class Stream : std::uint64_t { init = 1, perturbation = 2, trials = 3, property = 4 };

/// Counter-based generator: the n-th draw of (seed, stream, substream) is a
/// fixed hash of those four values, so results do not depend on how work is
/// split across threads. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, Stream stream, std::uint64_t substream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct RandomFieldOptions {
  int modes = 3;
  double min_width = 0.6;
  double max_width = 1.2;
  double max_center = 1.0;
  double max_wavenumber = 1.5;
  int max_charge = 2;
};

/// Sum of a few Gaussian-enveloped vortex/plane-wave modes with random
/// complex amplitudes. Smooth and decaying well inside the default boxes.
WaveField random_smooth_field(const GridSpec& grid, CounterRng& rng,
                              const RandomFieldOptions& options = {});

}  // namespace rotor
