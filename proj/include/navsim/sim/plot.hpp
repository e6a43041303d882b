#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "navsim/core/types.hpp"

namespace nav {

struct PlotSeries {
  std::string name;
  std::vector<Point2> points;
  int color = -1;  // palette slot; -1 uses the series position
};

inline constexpr int kSvgWidth = 800;
inline constexpr int kSvgHeight = 600;

/// One polyline per series inside a framed plot area scaled to the data
/// extents plus a 5% margin, with a legend. Throws EmptyTrace when `series`
/// is empty or any series has no points.
std::string svg_document(const std::vector<PlotSeries>& series, const std::string& title = {});
void render_svg_plot(const std::vector<PlotSeries>& series, const std::filesystem::path& path,
                     const std::string& title = {});

}  // namespace nav
