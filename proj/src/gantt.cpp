#include "fixb/gantt.hpp"

#include <algorithm>
#include <sstream>

namespace fixb {

namespace {

constexpr double kLeft = 60, kTop = 40, kBand = 36, kBar = 26, kWidth = 900;

const char* fill_for(int job) {
  static const char* palette[] = {"#8db3d9", "#f2b880", "#9fd49a", "#e59c9c", "#c3a6de",
                                  "#c9b38f", "#f0a8d0", "#bdbdbd", "#d9d97a", "#86d0d6"};
  return palette[job % 10];
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<GanttBar> gantt_bars(const Solution& sol) {
  const int n = sol.starts.rows(), m = sol.starts.cols();
  if (n == 0 || m == 0 || sol.sequence.size() != n) {
    throw InvalidInput("cannot draw an empty solution");
  }
  std::vector<GanttBar> bars;
  for (int k = 0; k < m; ++k) {
    for (int h = 0; h < n; ++h) {
      GanttBar bar;
      bar.machine = k;
      bar.position = h;
      bar.job = sol.sequence.order[h];
      bar.start = sol.starts(h, k);
      bar.end = bar.start + sol.ptimes(h, k);
      bar.blocked_end = k + 1 < m ? std::max(bar.end, sol.starts(h, k + 1)) : bar.end;
      bars.push_back(bar);
    }
  }
  return bars;
}

std::string gantt_svg(const Solution& sol, const std::string& title) {
  const auto bars = gantt_bars(sol);
  const int m = sol.starts.cols();
  const double horizon = static_cast<double>(std::max<Time>(sol.makespan, 1));
  const double scale = (kWidth - kLeft - 20) / horizon;
  const double height = kTop + m * kBand + 40;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<defs><pattern id=\"blocked\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
         "patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" "
         "stroke=\"#555\" stroke-width=\"2\"/></pattern></defs>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"20\" font-size=\"14\">" << escape(title)
      << " (makespan " << sol.makespan << ")</text>\n";
  for (int k = 0; k < m; ++k) {
    svg << "<text x=\"8\" y=\"" << kTop + k * kBand + kBar * 0.7 << "\">M" << k + 1 << "</text>\n";
  }
  for (const GanttBar& b : bars) {
    const double y = kTop + b.machine * kBand;
    const double x = kLeft + b.start * scale;
    const double w = (b.end - b.start) * scale;
    svg << "<rect class=\"op\" data-job=\"" << b.job + 1 << "\" data-start=\"" << b.start
        << "\" data-end=\"" << b.end << "\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << w
        << "\" height=\"" << kBar << "\" fill=\"" << fill_for(b.job) << "\" stroke=\"#333\"/>\n";
    if (w > 14) {
      svg << "<text x=\"" << x + w / 2 << "\" y=\"" << y + kBar * 0.65
          << "\" text-anchor=\"middle\">J" << b.job + 1 << "</text>\n";
    }
    if (b.blocked_end > b.end) {
      svg << "<rect class=\"blocked\" x=\"" << kLeft + b.end * scale << "\" y=\"" << y
          << "\" width=\"" << (b.blocked_end - b.end) * scale << "\" height=\"" << kBar
          << "\" fill=\"url(#blocked)\" stroke=\"#333\"/>\n";
    }
  }
  const double axis_y = kTop + m * kBand + 4;
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << axis_y << "\" x2=\"" << kLeft + horizon * scale
      << "\" y2=\"" << axis_y << "\" stroke=\"#000\"/>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"" << axis_y + 16 << "\">0</text>\n";
  svg << "<text x=\"" << kLeft + horizon * scale << "\" y=\"" << axis_y + 16
      << "\" text-anchor=\"end\">" << sol.makespan << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace fixb
