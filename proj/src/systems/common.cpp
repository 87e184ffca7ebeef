#include "bracketlab/systems.hpp"

namespace bracketlab {

State SystemSpec::random_state_for(std::uint64_t seed) const {
  if (sample_state) return sample_state(seed);
  RandomOptions o = state_probe;
  o.seed = seed;
  return random_state(schema, grid, o);
}

Cotangent SystemSpec::random_cotangent(std::uint64_t seed) const {
  RandomOptions o = cotangent_probe;
  o.seed = seed;
  return random_state(schema, grid, o);
}

}  // namespace bracketlab
