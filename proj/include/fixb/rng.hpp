#pragma once

// Portable pseudo-random draws. The byte-level contract is documented in
// docs/random-streams.md; changing anything here changes generated instances.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace fixb {

// One SplitMix64 step: advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state);

// Seed of the child stream identified by `keys` under `seed`.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

// MT19937-64 engine (output fixed by the C++ standard) with bounded integer
// draws by rejection, so results do not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform integer in [lo, hi], both ends inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  // Uniformly random permutation of 0..n-1 (Fisher-Yates, high to low).
  std::vector<int> permutation(int n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace fixb
