#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hybridopt/manifold.hpp"

namespace hybridopt {

struct PlotStyle {
  int panel_size = 600;
  double margin = 40.0;
  std::string trajectory_color = "#1f77b4";
  std::string jump_color = "#d62728";
  std::string target_color = "#2ca02c";
  std::string critical_color = "#7f7f7f";
};

/// Everything a phase plot needs, extracted from an exported arc JSON.
struct ArcPlotData {
  ManifoldKind kind;
  std::string title;
  std::vector<Eigen::VectorXd> z;  // trajectory of the optimization variable
  std::vector<int> jump_indices;
  std::optional<Eigen::VectorXd> target;
  std::vector<Eigen::VectorXd> critical_points;
};

ArcPlotData plot_data_from_arc_json(const std::string& json_text);

/// Deterministic SVG: fixed viewport, no timestamps. Circle arcs get one
/// embedded-coordinates panel; sphere arcs get an additional
/// azimuth-elevation panel.
std::string render_arc_svg(const ArcPlotData& data, const PlotStyle& style = {});

}  // namespace hybridopt
