#include "fixb/instgen.hpp"

#include "fixb/io.hpp"
#include "fixb/rng.hpp"

namespace fixb {

namespace {

// Slots given as 1-based machine lists; built into a Layout below.
Layout make_layout(int machines, const std::vector<std::vector<int>>& sets) {
  std::vector<Slot> slots;
  for (const auto& s : sets) slots.push_back({s.front() - 1, s.size() == 2});
  return Layout(machines, std::move(slots));
}

}  // namespace

Layout layout_for(int experiment_set) {
  switch (experiment_set) {
    case 1:
      // singles 1->M1, 2->M2, 10->M3, 15->M4, 16->M5
      return make_layout(5, {{1}, {2}, {2, 3}, {2, 3}, {2, 3}, {2, 3}, {2, 3}, {2, 3}, {2, 3},
                             {3}, {3, 4}, {3, 4}, {3, 4}, {3, 4}, {4}, {5}});
    case 2:
      // singles 1->M1, 2->M2, 7->M3, 12->M4, 16->M5
      return make_layout(5, {{1}, {2}, {2, 3}, {2, 3}, {2, 3}, {2, 3}, {3}, {3, 4}, {3, 4},
                             {3, 4}, {3, 4}, {4}, {4, 5}, {4, 5}, {4, 5}, {5}});
    default:
      throw InvalidInput("unknown experiment set " + std::to_string(experiment_set));
  }
}

Instance generate_instance(int experiment_set, int n, std::uint64_t seed, int index,
                           std::vector<DurationWindow>* windows) {
  if (n < 1) throw InvalidInput("job count must be at least 1");
  Layout layout = layout_for(experiment_set);
  Rng rng(derive_stream_seed(seed, {static_cast<std::uint64_t>(experiment_set),
                                    static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(index)}));
  std::vector<DurationWindow> drawn;
  for (int i = 0; i < layout.slot_count(); ++i) {
    const Slot& s = layout.slot(i);
    const DurationRanges& r = s.shiftable ? kShiftableRanges : kSingleRanges;
    for (int k = s.machine; k <= s.last_machine(); ++k) {
      Time low = rng.uniform_int(r.low_min, r.low_max);
      Time high = rng.uniform_int(low, r.high_max);
      drawn.push_back({i, k, low, high});
    }
  }
  Instance inst(generated_name(experiment_set, n, index), std::move(layout), n);
  for (int j = 0; j < n; ++j) {
    for (const DurationWindow& w : drawn) {
      inst.set_duration(j, w.slot, w.machine, rng.uniform_int(w.low, w.high));
    }
  }
  inst.meta() = {{"generator", "fixb-instgen/1"},
                 {"engine", "mt19937_64+splitmix64"},
                 {"experiment_set", experiment_set},
                 {"n", n},
                 {"seed", seed},
                 {"index", index}};
  if (windows) *windows = std::move(drawn);
  return inst;
}

std::vector<Instance> generate(const GenSpec& spec) {
  if (spec.count < 1) throw InvalidInput("count must be at least 1");
  std::vector<Instance> out;
  out.reserve(spec.count);
  for (int i = 0; i < spec.count; ++i) {
    out.push_back(generate_instance(spec.experiment_set, spec.n, spec.seed, i));
  }
  return out;
}

std::string generated_name(int experiment_set, int n, int index) {
  return "set" + std::to_string(experiment_set) + "_n" + std::to_string(n) + "_i" +
         std::to_string(index);
}

std::string generated_file_name(int experiment_set, int n, int index) {
  return generated_name(experiment_set, n, index) + ".json";
}

std::vector<std::filesystem::path> write_batch(const GenSpec& spec, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  const auto batch = generate(spec);
  for (int i = 0; i < spec.count; ++i) {
    auto path = dir / generated_file_name(spec.experiment_set, spec.n, i);
    save_instance(batch[i], path);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace fixb
