#pragma once

#include <cstdint>
#include <random>

#include "generators.hpp"

namespace modrep::test {

// Value of --seed=N on the test command line, default 0.
std::uint64_t seed();

inline std::mt19937_64 make_rng(std::uint64_t salt) {
  return std::mt19937_64(seed() * 1000003u + salt);
}

}  // namespace modrep::test
