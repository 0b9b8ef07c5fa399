#pragma once

#include <cstdint>
#include <string_view>

namespace dsg {

// xoshiro256** seeded through splitmix64. Bounded integers and unit doubles
// are derived here rather than through <random> distributions, whose output
// differs between standard library implementations.
class Rng {
 public:
  static constexpr std::string_view kName = "xoshiro256**/splitmix64 v1";

  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

 private:
  std::uint64_t s_[4];
};

/// Derives an independent child seed for stream `stream` of `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace dsg
