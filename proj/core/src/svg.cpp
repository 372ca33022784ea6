#include "hybridopt/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hybridopt {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Panel {
  double x0, y0, size, margin;
  double xmin, xmax, ymin, ymax;

  double px(double x) const {
    return x0 + margin + (x - xmin) / (xmax - xmin) * (size - 2 * margin);
  }
  double py(double y) const {
    return y0 + margin + (ymax - y) / (ymax - ymin) * (size - 2 * margin);
  }
};

void polyline(std::ostringstream& out, const std::vector<std::pair<double, double>>& pts,
              const std::string& color) {
  if (pts.empty()) return;
  out << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& [x, y] : pts) out << num(x) << ',' << num(y) << ' ';
  out << "\"/>\n";
}

void marker(std::ostringstream& out, double x, double y, const std::string& color,
            double r, const char* shape) {
  if (std::string(shape) == "cross") {
    out << "<path d=\"M" << num(x - r) << ' ' << num(y - r) << " L" << num(x + r)
        << ' ' << num(y + r) << " M" << num(x - r) << ' ' << num(y + r) << " L"
        << num(x + r) << ' ' << num(y - r) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
  } else {
    out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r)
        << "\" fill=\"" << color << "\"/>\n";
  }
}

}  // namespace

ArcPlotData plot_data_from_arc_json(const std::string& json_text) {
  using json = nlohmann::json;
  const json j = json::parse(json_text);
  ArcPlotData data;
  const auto& meta = j.at("metadata");
  const std::string mname = meta.at("manifold").get<std::string>();
  if (mname == "circle")
    data.kind = ManifoldKind::circle();
  else if (mname == "sphere")
    data.kind = ManifoldKind::sphere();
  else
    throw Error("arc plot: unsupported manifold '" + mname + "'");
  data.title = meta.value("scenario", std::string{}) + " (" +
               meta.value("dynamics", std::string{}) + ")";

  const int zd = meta.at("z_dim").get<int>();
  for (const auto& row : j.at("samples")) {
    Eigen::VectorXd z(zd);
    for (int i = 0; i < zd; ++i) z[i] = row.at(2 + i).get<double>();
    data.z.push_back(std::move(z));
  }
  for (const auto& idx : j.at("jump_indices")) data.jump_indices.push_back(idx.get<int>());

  const auto& ann = meta.at("annotations");
  if (ann.contains("target")) {
    const auto t = ann.at("target").get<std::vector<double>>();
    data.target = Eigen::Map<const Eigen::VectorXd>(t.data(), t.size());
  }
  for (const auto& c : ann.at("critical_points")) {
    const auto v = c.get<std::vector<double>>();
    data.critical_points.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()));
  }
  return data;
}

std::string render_arc_svg(const ArcPlotData& data, const PlotStyle& style) {
  const bool sphere = data.kind.type == ManifoldType::SphereS2;
  const double S = style.panel_size;
  const double W = sphere ? 2 * S : S;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
      << S << "\" viewBox=\"0 0 " << W << ' ' << S << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << S << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(W / 2) << "\" y=\"20\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">"
      << data.title << "</text>\n";

  // Panel 1: embedded coordinates (z1, z2) with the unit circle/equator.
  Panel p1{0, 0, S, style.margin, -1.25, 1.25, -1.25, 1.25};
  out << "<circle cx=\"" << num(p1.px(0)) << "\" cy=\"" << num(p1.py(0)) << "\" r=\""
      << num(p1.px(1.0) - p1.px(0.0)) << "\" fill=\"none\" stroke=\"#cccccc\""
      << (sphere ? " stroke-dasharray=\"4 3\"" : "") << "/>\n";

  std::vector<std::pair<double, double>> pts;
  for (const auto& z : data.z) pts.emplace_back(p1.px(z[0]), p1.py(z[1]));
  polyline(out, pts, style.trajectory_color);

  for (const auto& c : data.critical_points)
    marker(out, p1.px(c[0]), p1.py(c[1]), style.critical_color, 5, "cross");
  if (data.target)
    marker(out, p1.px((*data.target)[0]), p1.py((*data.target)[1]),
           style.target_color, 5, "circle");
  for (int idx : data.jump_indices)
    if (idx >= 0 && idx < static_cast<int>(data.z.size()))
      marker(out, p1.px(data.z[idx][0]), p1.py(data.z[idx][1]), style.jump_color, 4,
             "circle");
  if (!data.z.empty()) {
    marker(out, pts.front().first, pts.front().second, "#000000", 3, "circle");
  }

  if (sphere) {
    // Panel 2: azimuth-elevation phase space.
    Panel p2{S, 0, S, style.margin, -M_PI, M_PI, -M_PI / 2, M_PI / 2};
    out << "<rect x=\"" << num(p2.px(-M_PI)) << "\" y=\"" << num(p2.py(M_PI / 2))
        << "\" width=\"" << num(p2.px(M_PI) - p2.px(-M_PI)) << "\" height=\""
        << num(p2.py(-M_PI / 2) - p2.py(M_PI / 2))
        << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
    out << "<text x=\"" << num(S + S / 2) << "\" y=\"" << num(S - 8)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           "azimuth vs elevation</text>\n";

    const auto azel = [](const Eigen::VectorXd& z) {
      return std::pair<double, double>{std::atan2(z[1], z[0]),
                                       std::asin(std::clamp(z[2], -1.0, 1.0))};
    };
    // Split segments at the azimuth wrap so no spurious lines cross the panel.
    std::vector<std::pair<double, double>> seg;
    double prev_az = 0.0;
    for (size_t i = 0; i < data.z.size(); ++i) {
      const auto [az, el] = azel(data.z[i]);
      if (!seg.empty() && std::abs(az - prev_az) > M_PI) {
        polyline(out, seg, style.trajectory_color);
        seg.clear();
      }
      seg.emplace_back(p2.px(az), p2.py(el));
      prev_az = az;
    }
    polyline(out, seg, style.trajectory_color);

    for (const auto& c : data.critical_points) {
      const auto [az, el] = azel(c);
      marker(out, p2.px(az), p2.py(el), style.critical_color, 5, "cross");
    }
    if (data.target) {
      const auto [az, el] = azel(*data.target);
      marker(out, p2.px(az), p2.py(el), style.target_color, 5, "circle");
    }
    for (int idx : data.jump_indices)
      if (idx >= 0 && idx < static_cast<int>(data.z.size())) {
        const auto [az, el] = azel(data.z[idx]);
        marker(out, p2.px(az), p2.py(el), style.jump_color, 4, "circle");
      }
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace hybridopt
