#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hk/analysis.hpp"
#include "hk/sim.hpp"

namespace hk::io {

using json = nlohmann::json;

inline constexpr int kFormatRevision = 1;
inline constexpr const char* kToolVersion = HK_VERSION;

using LiteralRows = std::vector<std::vector<Literal>>;

// --- matrices as headerless CSV: one agent per line, one topic per column ---

LiteralRows parse_matrix_csv(std::string_view text);
LiteralRows read_matrix_csv(const std::filesystem::path& path);

template <class Scalar>
std::string format_matrix_csv(const OpinionMatrix<Scalar>& X) {
  std::string out;
  for (Index i = 0; i < X.rows(); ++i) {
    for (Index j = 0; j < X.cols(); ++j) {
      if (j) out += ',';
      out += format_scalar(X(i, j));
    }
    out += '\n';
  }
  return out;
}

// --- JSON building blocks. Agent indices are 1-based on the wire. ---

/// Doubles become JSON numbers, rationals "p/q" strings.
template <class Scalar>
json scalar_json(const Scalar& v) {
  if constexpr (is_exact_v<Scalar>) {
    return format_scalar(v);
  } else {
    return v;
  }
}

/// Numbers are read through their shortest decimal text, so 0.8 means 4/5
/// in exact mode and the same double in float mode.
Literal literal_from_json(const json& j);
json literal_json(const Literal& l);

template <class Derived>
json vector_json(const Eigen::MatrixBase<Derived>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(scalar_json(v(i)));
  return out;
}

template <class Scalar>
json matrix_json(const OpinionMatrix<Scalar>& X) {
  json out = json::array();
  for (Index i = 0; i < X.rows(); ++i) out.push_back(vector_json(X.row(i)));
  return out;
}

LiteralRows literal_rows_from_json(const json& j);
json adjacency_json(const InfluenceMatrix& phi);
json partition_json(const Partition& p);

json policy_json(const NumericPolicy& policy);
NumericPolicy policy_from_json(const json& j);

json config_json(const SimulationConfig& config);
/// Accepts the keys written by config_json plus "input" (CSV path resolved
/// against base_dir) as shorthand for an explicit matrix.
SimulationConfig config_from_json(const json& j, const std::filesystem::path& base_dir = {});

template <class Scalar>
json outcome_json(const OutcomeReport<Scalar>& r) {
  json out;
  out["kind"] = to_string(r.kind);
  out["model"] = to_string(r.model);
  out["epsilon_chain"] = r.epsilon_chain;
  out["termination_step"] = r.termination_step ? json(*r.termination_step) : json(nullptr);
  if (r.kind == OutcomeKind::not_terminated) {
    out["partition"] = nullptr;
    out["cluster_means"] = nullptr;
    out["consensus_value"] = nullptr;
    return out;
  }
  out["partition"] = partition_json(r.partition);
  out["block_sizes"] = r.partition.block_sizes();
  out["cluster_means"] = matrix_json(r.cluster_means);
  out["cluster_averages"] = vector_json(r.cluster_averages);
  out["consensus_value"] = r.consensus_value ? vector_json(*r.consensus_value) : json(nullptr);
  out["separated"] = r.separated;
  if (r.average_partition) {
    out["average_partition"] = partition_json(*r.average_partition);
    out["partition_mismatch"] = r.partition_mismatch;
  }
  return out;
}

// --- trajectories as JSON Lines ---
// line 1: {"header": {...}}, then one {"step": t, "state": ..., ...} per
// state, then {"end": {...}}.

json trajectory_header(const SimulationConfig& config);

template <class Scalar>
json record_json(std::size_t step, const OpinionMatrix<Scalar>& state, const StepRecord<Scalar>& rec) {
  json out;
  out["step"] = step;
  out["state"] = matrix_json(state);
  out["neighbors"] = adjacency_json(rec.influence);
  if (rec.gamma) out["gamma"] = scalar_json(*rec.gamma);
  out["topic_ranges"] = vector_json(rec.topic_ranges);
  out["global_range"] = scalar_json(rec.global_range);
  return out;
}

template <class Scalar>
std::string format_trajectory(const SimulationConfig& config, const Trajectory<Scalar>& traj) {
  std::string out = json{{"header", trajectory_header(config)}}.dump() + '\n';
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    out += record_json(t, traj.states[t], traj.records[t]).dump() + '\n';
  }
  json end;
  end["terminated"] = traj.terminated;
  end["termination_step"] = traj.termination_step ? json(*traj.termination_step) : json(nullptr);
  end["steps_run"] = traj.steps_run();
  out += json{{"end", end}}.dump() + '\n';
  return out;
}

struct TrajectoryFile {
  json header;
  std::vector<LiteralRows> states;
  json end;
};

/// Throws std::runtime_error on malformed content.
TrajectoryFile parse_trajectory(std::istream& in);
TrajectoryFile read_trajectory(const std::filesystem::path& path);

// --- manifest ---

json manifest_json(const SimulationConfig& config, const std::string& trajectory_file,
                   const std::string& summary_file);
SimulationConfig config_from_manifest(const json& manifest);

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

}  // namespace hk::io
