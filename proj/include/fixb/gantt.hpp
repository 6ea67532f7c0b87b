#pragma once

#include <string>
#include <vector>

#include "fixb/core.hpp"

namespace fixb {

struct GanttBar {
  int machine = 0;
  int position = 0;
  int job = 0;
  Time start = 0;
  Time end = 0;
  // Blocked interval after processing: the job holds the machine until it
  // starts on the next one. Empty when blocked_end == end.
  Time blocked_end = 0;
};

// One bar per (position, machine). Throws InvalidInput for an empty
// solution.
std::vector<GanttBar> gantt_bars(const Solution& sol);

// Standalone SVG: one band per machine, blocked intervals hatched.
std::string gantt_svg(const Solution& sol, const std::string& title);

}  // namespace fixb
