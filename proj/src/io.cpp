#include "hk/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hk::io {

LiteralRows parse_matrix_csv(std::string_view text) {
  LiteralRows rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    std::vector<Literal> row;
    while (true) {
      const auto comma = line.find(',');
      const std::string_view token = line.substr(0, comma);
      try {
        row.emplace_back(std::string(token));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
      }
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(rows.front().size()) + " columns, got " +
                                  std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix file has no rows");
  return rows;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

LiteralRows read_matrix_csv(const std::filesystem::path& path) {
  try {
    return parse_matrix_csv(read_text(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

Literal literal_from_json(const json& j) {
  if (j.is_string()) return Literal(j.get<std::string>());
  if (j.is_number_integer()) return Literal(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Literal(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_float()) return Literal(format_scalar(j.get<double>()));
  throw std::invalid_argument("expected a number, got " + j.dump());
}

json literal_json(const Literal& l) {
  if (l.is_text()) return l.text();
  return l.as<double>();
}

LiteralRows literal_rows_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  LiteralRows rows;
  for (const auto& r : j) {
    if (!r.is_array() || r.empty()) throw std::invalid_argument("matrix row must be a non-empty array");
    std::vector<Literal> row;
    for (const auto& v : r) row.push_back(literal_from_json(v));
    if (!rows.empty() && row.size() != rows.front().size()) throw std::invalid_argument("ragged matrix");
    rows.push_back(std::move(row));
  }
  return rows;
}

json adjacency_json(const InfluenceMatrix& phi) {
  json out = json::array();
  for (Index i = 0; i < phi.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < phi.cols(); ++k) {
      if (phi(i, k)) row.push_back(k + 1);
    }
    out.push_back(std::move(row));
  }
  return out;
}

json partition_json(const Partition& p) {
  json out = json::array();
  for (const auto& block : p.blocks()) {
    json b = json::array();
    for (Index i : block) b.push_back(i + 1);
    out.push_back(std::move(b));
  }
  return out;
}

json policy_json(const NumericPolicy& policy) {
  return json{{"mode", to_string(policy.mode)},
              {"fixed_point_tol", policy.fixed_point_tol},
              {"cluster_tol", policy.cluster_tol},
              {"row_sum_tol", policy.row_sum_tol}};
}

NumericPolicy policy_from_json(const json& j) {
  if (j.is_string()) return NumericPolicy::for_mode(parse_numeric_mode(j.get<std::string>()));
  if (!j.is_object()) throw std::invalid_argument("policy must be a string or an object");
  NumericPolicy p = NumericPolicy::for_mode(parse_numeric_mode(j.at("mode").get<std::string>()));
  if (j.contains("fixed_point_tol")) p.fixed_point_tol = j.at("fixed_point_tol").get<double>();
  if (j.contains("cluster_tol")) p.cluster_tol = j.at("cluster_tol").get<double>();
  if (j.contains("row_sum_tol")) p.row_sum_tol = j.at("row_sum_tol").get<double>();
  p.validate();
  return p;
}

json config_json(const SimulationConfig& config) {
  json out;
  out["model"] = to_string(config.model);
  out["epsilon"] = literal_json(config.epsilon);
  out["policy"] = policy_json(config.policy);
  out["max_steps"] = config.effective_max_steps();
  if (const auto* e = std::get_if<ExplicitInit>(&config.init)) {
    json rows = json::array();
    for (const auto& r : e->rows) {
      json row = json::array();
      for (const auto& v : r) row.push_back(literal_json(v));
      rows.push_back(std::move(row));
    }
    out["matrix"] = std::move(rows);
    if (!e->source.empty()) out["input"] = e->source;
  } else {
    const auto& b = std::get<BoxInit>(config.init);
    out["n"] = b.agents;
    out["m"] = b.topics;
    json box = json::array();
    for (const auto& iv : b.box) box.push_back(json::array({iv.low, iv.high}));
    out["box"] = std::move(box);
    out["seed"] = b.seed;
  }
  return out;
}

namespace {

std::vector<Interval> box_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("box must be [lo, hi] or [[lo, hi], ...]");
  if (j.front().is_number()) {
    if (j.size() != 2) throw std::invalid_argument("box must be [lo, hi]");
    return {Interval{j[0].get<double>(), j[1].get<double>()}};
  }
  std::vector<Interval> out;
  for (const auto& iv : j) {
    if (!iv.is_array() || iv.size() != 2) throw std::invalid_argument("box interval must be [lo, hi]");
    out.push_back({iv[0].get<double>(), iv[1].get<double>()});
  }
  return out;
}

}  // namespace

SimulationConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  try {
    SimulationConfig c;
    c.model = parse_model(j.at("model").get<std::string>());
    c.epsilon = literal_from_json(j.at("epsilon"));
    c.policy = j.contains("policy") ? policy_from_json(j.at("policy")) : NumericPolicy::floating();
    if (j.contains("max_steps") && !j.at("max_steps").is_null()) {
      const auto k = j.at("max_steps").get<long long>();
      if (k < 1) throw std::invalid_argument("max_steps must be at least 1");
      c.max_steps = static_cast<std::size_t>(k);
    }
    if (j.contains("matrix")) {
      c.init = ExplicitInit{literal_rows_from_json(j.at("matrix")), j.value("input", std::string{})};
    } else if (j.contains("input")) {
      std::filesystem::path p = j.at("input").get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      c.init = ExplicitInit{read_matrix_csv(p), j.at("input").get<std::string>()};
    } else {
      BoxInit b;
      b.agents = j.at("n").get<Index>();
      b.topics = j.at("m").get<Index>();
      b.box = box_from_json(j.at("box"));
      b.seed = j.value("seed", std::uint64_t{0});
      c.init = std::move(b);
    }
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad config: ") + e.what());
  }
}

json trajectory_header(const SimulationConfig& config) {
  json h;
  h["format"] = "hk-trajectory";
  h["format_revision"] = kFormatRevision;
  h["tool_version"] = kToolVersion;
  h["config"] = config_json(config);
  if (const auto* b = std::get_if<BoxInit>(&config.init)) {
    h["generator"] = json{{"name", kGeneratorName}, {"seed", b->seed}};
  } else {
    h["generator"] = nullptr;
  }
  return h;
}

TrajectoryFile parse_trajectory(std::istream& in) {
  TrajectoryFile file;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw std::runtime_error("trajectory line " + std::to_string(line_no) + ": " + e.what());
    }
    if (j.contains("header")) {
      file.header = j.at("header");
    } else if (j.contains("end")) {
      file.end = j.at("end");
    } else if (j.contains("step") && j.contains("state")) {
      if (j.at("step").get<std::size_t>() != file.states.size()) {
        throw std::runtime_error("trajectory line " + std::to_string(line_no) + ": steps out of sequence");
      }
      try {
        file.states.push_back(literal_rows_from_json(j.at("state")));
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error("trajectory line " + std::to_string(line_no) + ": " + e.what());
      }
    } else {
      throw std::runtime_error("trajectory line " + std::to_string(line_no) + ": unrecognised record");
    }
  }
  if (file.states.empty()) throw std::runtime_error("trajectory has no states");
  return file;
}

TrajectoryFile read_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return parse_trajectory(in);
}

json manifest_json(const SimulationConfig& config, const std::string& trajectory_file,
                   const std::string& summary_file) {
  json m;
  m["format_revision"] = kFormatRevision;
  m["tool_version"] = kToolVersion;
  m["config"] = config_json(config);
  m["generator"] = trajectory_header(config).at("generator");
  m["artifacts"] = json{{"trajectory", trajectory_file}, {"summary", summary_file}};
  return m;
}

SimulationConfig config_from_manifest(const json& manifest) {
  if (!manifest.is_object() || !manifest.contains("config")) {
    throw std::invalid_argument("manifest has no config");
  }
  return config_from_json(manifest.at("config"));
}

}  // namespace hk::io
