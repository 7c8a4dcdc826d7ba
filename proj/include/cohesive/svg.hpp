#pragma once

// Minimal line-plot renderer: a row of panels, each with a few polylines.

#include <iosfwd>
#include <string>
#include <vector>

#include "cohesive/pathsim.hpp"

namespace cohesive {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotPanel {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<PlotSeries> series;
};

void write_svg(std::ostream& os, const std::vector<PlotPanel>& panels);

// traction_l vs y_l for both directions, plus y/z and energy vs t.
std::vector<PlotPanel> trace_panels(const PathTrace& trace);

}  // namespace cohesive
