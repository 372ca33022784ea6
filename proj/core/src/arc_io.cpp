#include "hybridopt/arc_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hybridopt {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<std::string> state_column_names(const StateLayout& layout) {
  std::vector<std::string> names;
  const auto is_discrete = [&](int idx) {
    for (int d : layout.discrete_indices)
      if (d == idx) return true;
    return false;
  };
  int z_seen = 0, chi_seen = 0;
  for (int i = 0; i < layout.dim; ++i) {
    if (is_discrete(i)) continue;
    bool in_first_block =
        !layout.manifold_blocks.empty() &&
        i >= layout.manifold_blocks[0].offset &&
        i < layout.manifold_blocks[0].offset + layout.manifold_blocks[0].kind.ambient_dim();
    if (in_first_block)
      names.push_back("z" + std::to_string(++z_seen));
    else
      names.push_back("chi" + std::to_string(++chi_seen));
  }
  return names;
}

std::string arc_to_csv(const HybridArc& arc, const StateLayout& layout,
                       const LyapunovDiagnostics& diag) {
  const auto is_discrete = [&](int idx) {
    for (int d : layout.discrete_indices)
      if (d == idx) return true;
    return false;
  };

  std::ostringstream out;
  out << "t,j";
  for (const auto& n : state_column_names(layout)) out << ',' << n;
  out << ",V,uC,mode\n";

  for (size_t s = 0; s < arc.size(); ++s) {
    out << fmt_double(arc.times[s].t) << ',' << arc.times[s].j;
    const State& x = arc.states[s];
    for (int i = 0; i < layout.dim; ++i) {
      if (is_discrete(i)) continue;
      out << ',' << fmt_double(x[i]);
    }
    out << ',' << fmt_double(diag.V[s]) << ',' << fmt_double(diag.u_C[s]) << ','
        << mode_of(layout, x) << '\n';
  }
  return out.str();
}

std::string arc_to_json(const HybridArc& arc, const StateLayout& layout,
                        const LyapunovDiagnostics& diag, const ArcMetadata& meta) {
  using json = nlohmann::ordered_json;
  json j;
  j["metadata"] = {
      {"scenario", meta.scenario},
      {"dynamics", meta.dynamics_kind},
      {"manifold", meta.manifold.name()},
      {"termination", to_string(meta.termination)},
  };
  if (meta.final_distance) j["metadata"]["final_distance"] = *meta.final_distance;
  if (!meta.config_json.empty())
    j["metadata"]["config"] = nlohmann::ordered_json::parse(meta.config_json);
  json ann = json::object();
  if (meta.target) ann["target"] = std::vector<double>(meta.target->begin(), meta.target->end());
  json crits = json::array();
  for (const auto& c : meta.critical_points)
    crits.push_back(std::vector<double>(c.begin(), c.end()));
  ann["critical_points"] = crits;
  j["metadata"]["annotations"] = ann;
  j["metadata"]["z_dim"] = layout.manifold_blocks[0].kind.ambient_dim();

  json cols = json::array();
  cols.push_back("t");
  cols.push_back("j");
  for (const auto& n : state_column_names(layout)) cols.push_back(n);
  cols.push_back("V");
  cols.push_back("uC");
  cols.push_back("mode");
  j["columns"] = cols;

  const auto is_discrete = [&](int idx) {
    for (int d : layout.discrete_indices)
      if (d == idx) return true;
    return false;
  };
  json samples = json::array();
  for (size_t s = 0; s < arc.size(); ++s) {
    json row = json::array();
    row.push_back(arc.times[s].t);
    row.push_back(arc.times[s].j);
    for (int i = 0; i < layout.dim; ++i) {
      if (is_discrete(i)) continue;
      row.push_back(arc.states[s][i]);
    }
    row.push_back(diag.V[s]);
    row.push_back(diag.u_C[s]);
    row.push_back(mode_of(layout, arc.states[s]));
    samples.push_back(std::move(row));
  }
  j["samples"] = samples;
  j["jump_indices"] = arc.jump_indices;
  return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw Error("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace hybridopt
