#include "navsim/sim/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "navsim/core/error.hpp"
#include "navsim/sim/trace.hpp"

namespace nav {

namespace {

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

}  // namespace

std::string svg_document(const std::vector<PlotSeries>& series, const std::string& title) {
  if (series.empty()) fail(ErrorCode::EmptyTrace, "no series to plot");
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const PlotSeries& s : series) {
    if (s.points.empty()) fail(ErrorCode::EmptyTrace, "series '" + s.name + "' has no points");
    for (const Point2& p : s.points) {
      require(std::isfinite(p.x) && std::isfinite(p.y), "non-finite plot coordinate");
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
  }
  // equal scale on both axes, data box padded by 5% of its span
  double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double pad = 0.05 * span;
  x0 -= pad;
  x1 += pad;
  y0 -= pad;
  y1 += pad;
  const double plot_w = kSvgWidth * 0.9, plot_h = kSvgHeight * 0.9;
  const double left = kSvgWidth * 0.05, top = kSvgHeight * 0.05;
  const double scale = std::min(plot_w / (x1 - x0), plot_h / (y1 - y0));
  const double off_x = left + 0.5 * (plot_w - scale * (x1 - x0));
  const double off_y = top + 0.5 * (plot_h - scale * (y1 - y0));
  auto px = [&](double x) { return off_x + (x - x0) * scale; };
  auto py = [&](double y) { return off_y + (y1 - y) * scale; };
  auto color = [&](std::size_t i) {
    const std::size_t slot = series[i].color >= 0 ? static_cast<std::size_t>(series[i].color) : i;
    return kPalette[slot % kPalette.size()];
  };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kSvgWidth) + "\" height=\"" +
         std::to_string(kSvgHeight) + "\" viewBox=\"0 0 " + std::to_string(kSvgWidth) + " " +
         std::to_string(kSvgHeight) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(kSvgWidth) + "\" height=\"" + std::to_string(kSvgHeight) +
         "\" fill=\"white\"/>\n";
  out += "<rect class=\"axes\" x=\"" + fmt("%.3f", off_x) + "\" y=\"" + fmt("%.3f", off_y) + "\" width=\"" +
         fmt("%.3f", scale * (x1 - x0)) + "\" height=\"" + fmt("%.3f", scale * (y1 - y0)) +
         "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  if (!title.empty())
    out += "<text x=\"" + std::to_string(kSvgWidth / 2) + "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
           escape(title) + "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color(i)) +
           "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const Point2& p : series[i].points) {
      if (!first) out += ' ';
      first = false;
      out += fmt("%.3f", px(p.x)) + "," + fmt("%.3f", py(p.y));
    }
    out += "\"/>\n";
  }
  out += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  std::vector<std::string> shown;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::string key = series[i].name + "|" + color(i);
    if (std::find(shown.begin(), shown.end(), key) != shown.end()) continue;
    shown.push_back(key);
    const double ly = top + 14.0 + 16.0 * static_cast<double>(shown.size() - 1);
    const std::string y = fmt("%.1f", ly);
    out += "<line x1=\"" + fmt("%.1f", left + 8) + "\" y1=\"" + y + "\" x2=\"" + fmt("%.1f", left + 28) + "\" y2=\"" + y +
           "\" stroke=\"" + color(i) + "\" stroke-width=\"3\"/>\n";
    out += "<text x=\"" + fmt("%.1f", left + 34) + "\" y=\"" + fmt("%.1f", ly + 4) + "\">" + escape(series[i].name) +
           "</text>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

void render_svg_plot(const std::vector<PlotSeries>& series, const std::filesystem::path& path,
                     const std::string& title) {
  write_text_file(path, svg_document(series, title));
}

}  // namespace nav
