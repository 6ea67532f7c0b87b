#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "fixb/core.hpp"

namespace fixb {

// Experiment Set 1 reproduces the five-station line with shiftable blocks
// between M2/M3 and M3/M4; Set 2 adds flexibility between M4 and M5.
Layout layout_for(int experiment_set);

struct GenSpec {
  int experiment_set = 1;
  int n = 5;
  std::uint64_t seed = 0;
  int count = 1;
};

// Sampling window [low, high] drawn for one (slot, machine) pair.
struct DurationWindow {
  int slot = 0;
  int machine = 0;
  Time low = 0;
  Time high = 0;
};

// Ranges of the window endpoints and of the durations by slot kind.
struct DurationRanges {
  Time low_min, low_max, high_max;
};
inline constexpr DurationRanges kShiftableRanges{2, 12, 14};
inline constexpr DurationRanges kSingleRanges{10, 25, 28};

// Instance `index` of the batch described by (set, n, seed). Independent of
// the batch size, so batches are prefix-consistent. When `windows` is
// non-null it receives the drawn sampling windows in draw order.
Instance generate_instance(int experiment_set, int n, std::uint64_t seed, int index,
                           std::vector<DurationWindow>* windows = nullptr);

std::vector<Instance> generate(const GenSpec& spec);

// Instance name of batch member `index`: set{S}_n{N}_i{index}
std::string generated_name(int experiment_set, int n, int index);
// File name of batch member `index`: set{S}_n{N}_i{index}.json
std::string generated_file_name(int experiment_set, int n, int index);

// Writes the batch into `dir` (created if missing); returns the paths written.
std::vector<std::filesystem::path> write_batch(const GenSpec& spec, const std::filesystem::path& dir);

}  // namespace fixb
