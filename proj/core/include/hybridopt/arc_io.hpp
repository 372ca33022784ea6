#pragma once

#include <optional>
#include <string>

#include "hybridopt/switching.hpp"

namespace hybridopt {

/// Metadata carried alongside an exported arc so plots and downstream
/// tooling do not need to re-derive anything.
struct ArcMetadata {
  std::string scenario;
  std::string dynamics_kind;
  ManifoldKind manifold;
  std::string config_json;  // resolved scenario configuration (JSON text)
  Termination termination = Termination::TimeLimit;
  std::optional<double> final_distance;
  std::optional<Eigen::VectorXd> target;
  std::vector<Eigen::VectorXd> critical_points;
};

/// CSV with header `t,j,<state columns...>,V,uC,mode`. State columns are the
/// non-discrete entries in layout order (z1.., chi1..); formatting is fixed
/// so identical runs produce byte-identical files.
std::string arc_to_csv(const HybridArc& arc, const StateLayout& layout,
                       const LyapunovDiagnostics& diag);

/// JSON variant carrying the metadata, the column names, every sample, and
/// the jump indices.
std::string arc_to_json(const HybridArc& arc, const StateLayout& layout,
                        const LyapunovDiagnostics& diag, const ArcMetadata& meta);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

std::vector<std::string> state_column_names(const StateLayout& layout);

}  // namespace hybridopt
