#include "cohesive/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

namespace cohesive {

namespace {

constexpr double kW = 360.0;
constexpr double kH = 280.0;
constexpr double kPad = 48.0;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

void write_svg(std::ostream& os, const std::vector<PlotPanel>& panels) {
  const double width = kW * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
  os << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="11">)", width, kH)
     << "\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const PlotPanel& panel = panels[p];
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const PlotSeries& s : panel.series) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        x0 = std::min(x0, s.x[i]);
        x1 = std::max(x1, s.x[i]);
        y0 = std::min(y0, s.y[i]);
        y1 = std::max(y1, s.y[i]);
      }
    }
    if (!(x1 > x0)) { x0 -= 0.5; x1 += 0.5; }
    if (!(y1 > y0)) { y0 -= 0.5; y1 += 0.5; }
    if (!std::isfinite(x0)) { x0 = 0; x1 = 1; y0 = 0; y1 = 1; }
    const double ox = kW * static_cast<double>(p);
    const double pw = kW - 1.5 * kPad;
    const double ph = kH - 2.0 * kPad;
    auto sx = [&](double x) { return ox + kPad + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return kH - kPad - (y - y0) / (y1 - y0) * ph; };

    os << fmt::format(R"(<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#444"/>)", ox + kPad,
                      kPad, pw, ph)
       << "\n";
    os << fmt::format(R"(<text x="{}" y="{}" text-anchor="middle">{}</text>)", ox + kPad + pw / 2, kPad - 14,
                      escape(panel.title))
       << "\n";
    os << fmt::format(R"(<text x="{}" y="{}" text-anchor="middle">{}</text>)", ox + kPad + pw / 2, kH - 10,
                      escape(panel.xlabel))
       << "\n";
    os << fmt::format(R"svg(<text x="{}" y="{}" text-anchor="middle" transform="rotate(-90 {} {})">{}</text>)svg",
                      ox + 12, kH / 2, ox + 12, kH / 2, escape(panel.ylabel))
       << "\n";
    os << fmt::format(R"(<text x="{}" y="{}" text-anchor="middle">{:.3g}</text>)", sx(x0), kH - kPad + 14, x0) << "\n";
    os << fmt::format(R"(<text x="{}" y="{}" text-anchor="middle">{:.3g}</text>)", sx(x1), kH - kPad + 14, x1) << "\n";
    os << fmt::format(R"(<text x="{}" y="{}" text-anchor="end">{:.3g}</text>)", ox + kPad - 4, sy(y0), y0) << "\n";
    os << fmt::format(R"(<text x="{}" y="{}" text-anchor="end">{:.3g}</text>)", ox + kPad - 4, sy(y1) + 8, y1) << "\n";
    if (y0 < 0.0 && y1 > 0.0) {
      os << fmt::format(R"(<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#bbb" stroke-dasharray="3,3"/>)",
                        sx(x0), sy(0.0), sx(x1), sy(0.0))
         << "\n";
    }
    for (std::size_t k = 0; k < panel.series.size(); ++k) {
      const PlotSeries& s = panel.series[k];
      const char* color = kColors[k % 4];
      os << fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.2" points=")", color);
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        os << fmt::format("{:.2f},{:.2f} ", sx(s.x[i]), sy(s.y[i]));
      }
      os << "\"/>\n";
      os << fmt::format(R"(<text x="{}" y="{}" fill="{}">{}</text>)", ox + kPad + 6, kPad + 14 + 13 * k, color,
                        escape(s.label))
         << "\n";
    }
  }
  os << "</svg>\n";
}

std::vector<PlotPanel> trace_panels(const PathTrace& trace) {
  PlotSeries t1{"traction 1", {}, {}}, t2{"traction 2", {}, {}};
  PlotSeries y1{"y1", {}, {}}, y2{"y2", {}, {}}, z1{"z1", {}, {}}, z2{"z2", {}, {}};
  PlotSeries en{"energy", {}, {}};
  for (const TraceRow& r : trace.rows) {
    t1.x.push_back(r.y[0]);
    t1.y.push_back(r.traction[0]);
    t2.x.push_back(r.y[1]);
    t2.y.push_back(r.traction[1]);
    for (auto* s : {&y1, &y2, &z1, &z2, &en}) s->x.push_back(r.t);
    y1.y.push_back(r.y[0]);
    y2.y.push_back(r.y[1]);
    z1.y.push_back(r.z[0]);
    z2.y.push_back(r.z[1]);
    en.y.push_back(r.energy);
  }
  std::vector<PlotPanel> out;
  out.push_back({"openings and history", "t", "y, z", {y1, y2, z1, z2}});
  out.push_back({"direction 1", "y1", "traction", {t1}});
  out.push_back({"direction 2", "y2", "traction", {t2}});
  if (trace.model == "potential") out.push_back({"energy", "t", "Phi", {en}});
  return out;
}

}  // namespace cohesive
