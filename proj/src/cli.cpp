#include "hk/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hk/io.hpp"
#include "hk/sim.hpp"
#include "hk/verify.hpp"

namespace hk::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunFlags {
  std::string model;
  std::string epsilon;
  std::string input;
  std::optional<long long> agents;
  std::optional<long long> topics;
  std::string box = "-1,1";
  std::uint64_t seed = 0;
  std::string policy = "float";
  std::optional<long long> max_steps;
  std::string out_dir;
  std::string manifest;
};

struct BatchFlags {
  std::string sweep;
  std::string out_dir;
};

struct ClassifyFlags {
  std::string input;
  std::string trajectory;
  std::string epsilon;
  std::string model;
  std::string policy;
};

struct VerifyFlags {
  long long trials = 100;
  std::uint64_t seed = 0;
  std::string policy = "exact";
  bool inject_fault = false;
};

struct PlotFlags {
  std::string trajectory;
  std::string out_dir;
};

Interval parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--box expects LO,HI");
  try {
    return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--box: ") + e.what());
  }
}

/// "-1,1" after a value-taking flag would otherwise be read as an option.
std::vector<std::string> glue_negative_values(std::vector<std::string> args) {
  static const std::vector<std::string> valued = {"--box", "--epsilon"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (std::find(valued.begin(), valued.end(), args[i]) != valued.end() && i + 1 < args.size() &&
        args[i + 1].size() > 1 && args[i + 1][0] == '-' && args[i + 1][1] != '-') {
      out.push_back(args[i] + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(args[i]);
    }
  }
  return out;
}

SimulationConfig config_from_flags(const RunFlags& f) {
  if (!f.manifest.empty()) {
    json manifest;
    try {
      manifest = json::parse(io::read_text(f.manifest));
    } catch (const json::exception& e) {
      throw UsageError("manifest: " + std::string(e.what()));
    }
    return io::config_from_manifest(manifest);
  }
  if (f.model.empty()) throw UsageError("--model is required");
  if (f.epsilon.empty()) throw UsageError("--epsilon is required");
  SimulationConfig c;
  c.model = parse_model(f.model);
  c.epsilon = Literal(f.epsilon);
  c.policy = NumericPolicy::for_mode(parse_numeric_mode(f.policy));
  if (f.max_steps) {
    if (*f.max_steps < 1) throw UsageError("--max-steps must be at least 1");
    c.max_steps = static_cast<std::size_t>(*f.max_steps);
  }
  if (!f.input.empty()) {
    if (f.agents || f.topics) throw UsageError("--input cannot be combined with --n/--m");
    c.init = ExplicitInit{io::read_matrix_csv(f.input), f.input};
  } else {
    if (!f.agents || !f.topics) throw UsageError("either --input or both --n and --m are required");
    BoxInit b;
    b.agents = *f.agents;
    b.topics = *f.topics;
    b.box = {parse_interval(f.box)};
    b.seed = f.seed;
    c.init = std::move(b);
  }
  c.validate();
  return c;
}

json run_summary_json(const json& outcome, bool terminated, std::optional<std::size_t> tstar, std::size_t steps,
                      const json& final_ranges, const json& final_global) {
  json s = outcome;
  s["terminated"] = terminated;
  s["termination_step"] = tstar ? json(*tstar) : json(nullptr);
  s["steps_run"] = steps;
  s["final_topic_ranges"] = final_ranges;
  s["final_global_range"] = final_global;
  return s;
}

template <class Scalar>
int run_config(const SimulationConfig& config, const std::string& out_dir, std::ostream& out) {
  const Trajectory<Scalar> traj = run<Scalar>(config);
  const OutcomeReport<Scalar> outcome = classify_trajectory(config, traj);
  const auto& last = traj.records.back();
  const json summary = run_summary_json(io::outcome_json(outcome), traj.terminated, traj.termination_step,
                                        traj.steps_run(), io::vector_json(last.topic_ranges),
                                        io::scalar_json(last.global_range));
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    io::write_text(fs::path(out_dir) / "trajectory.jsonl", io::format_trajectory(config, traj));
    io::write_text(fs::path(out_dir) / "summary.json", summary.dump(2) + "\n");
    io::write_text(fs::path(out_dir) / "manifest.json",
                   io::manifest_json(config, "trajectory.jsonl", "summary.json").dump(2) + "\n");
  }
  out << summary.dump(2) << "\n";
  return traj.terminated ? kOk : kNotTerminated;
}

int cmd_run(const RunFlags& f, std::ostream& out) {
  const SimulationConfig config = config_from_flags(f);
  if (config.policy.mode == NumericMode::exact) return run_config<Rational>(config, f.out_dir, out);
  return run_config<double>(config, f.out_dir, out);
}

json batch_summary_json(const BatchSummary& s) {
  json j;
  j["index"] = s.index;
  j["config"] = io::config_json(s.config);
  j["error"] = s.error ? json(*s.error) : json(nullptr);
  j["terminated"] = s.terminated;
  j["termination_step"] = s.termination_step ? json(*s.termination_step) : json(nullptr);
  j["steps_run"] = s.steps_run;
  j["outcome"] = s.error ? "error" : to_string(s.kind);
  j["cluster_count"] = s.cluster_count;
  j["final_topic_ranges"] = s.final_topic_ranges;
  j["final_global_range"] = s.final_global_range;
  return j;
}

int cmd_batch(const BatchFlags& f, std::ostream& out) {
  json sweep;
  try {
    sweep = json::parse(io::read_text(f.sweep));
  } catch (const json::exception& e) {
    throw UsageError("sweep file: " + std::string(e.what()));
  }
  if (!sweep.is_array()) throw UsageError("sweep file must hold a JSON array of configs");
  if (sweep.empty()) throw UsageError("sweep file is empty");

  const fs::path base = fs::path(f.sweep).parent_path();
  std::vector<SimulationConfig> configs;
  std::vector<std::size_t> slot;
  std::vector<BatchSummary> results(sweep.size());
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    results[i].index = i;
    try {
      configs.push_back(io::config_from_json(sweep[i], base));
      slot.push_back(i);
    } catch (const std::exception& e) {
      results[i].error = e.what();
    }
  }
  const auto done = batch_run(configs);
  for (std::size_t k = 0; k < done.size(); ++k) {
    results[slot[k]] = done[k];
    results[slot[k]].index = slot[k];
  }

  fs::create_directories(f.out_dir);
  std::ostringstream csv;
  csv << "seed,termination_step,outcome,cluster_count\n";
  std::size_t ok = 0;
  for (const auto& s : results) {
    const json j = batch_summary_json(s);
    char name[32];
    std::snprintf(name, sizeof name, "summary_%04zu.json", s.index + 1);
    io::write_text(fs::path(f.out_dir) / name, j.dump(2) + "\n");
    const auto* box = std::get_if<BoxInit>(&s.config.init);
    csv << (box && !s.error ? std::to_string(box->seed) : "") << ','
        << (s.termination_step ? std::to_string(*s.termination_step) : "") << ','
        << j["outcome"].get<std::string>() << ',' << s.cluster_count << '\n';
    if (!s.error) ++ok;
  }
  io::write_text(fs::path(f.out_dir) / "aggregate.csv", csv.str());
  out << json{{"runs", results.size()}, {"succeeded", ok}, {"aggregate", (fs::path(f.out_dir) / "aggregate.csv").string()}}.dump()
      << "\n";
  return ok > 0 ? kOk : kUsage;
}

template <class Scalar>
int classify_matrix(const io::LiteralRows& rows, const std::string& eps_text, Model model,
                    const NumericPolicy& policy, std::ostream& out) {
  const OpinionMatrix<Scalar> X = literal_matrix<Scalar>(rows);
  const OutcomeReport<Scalar> report = classify_outcome(X, parse_scalar<Scalar>(eps_text), model, policy);
  out << io::outcome_json(report).dump(2) << "\n";
  return kOk;
}

template <class Scalar>
int classify_trajectory_file(const io::TrajectoryFile& file, const std::string& eps_text, Model model,
                             const NumericPolicy& policy, std::ostream& out) {
  const Scalar epsilon = parse_scalar<Scalar>(eps_text);
  std::vector<OpinionMatrix<Scalar>> states;
  for (const auto& rows : file.states) states.push_back(literal_matrix<Scalar>(rows));
  std::size_t checked = 0;
  for (std::size_t t = 0; t + 1 < states.size(); ++t) {
    if (!states_match(model_next(model, states[t], epsilon), states[t + 1], Scalar(0))) {
      throw std::runtime_error("trajectory does not replay at step " + std::to_string(t));
    }
    ++checked;
  }
  OutcomeReport<Scalar> report = classify_outcome(states.back(), epsilon, model, policy);
  if (file.end.is_object() && file.end.contains("termination_step") && !file.end["termination_step"].is_null()) {
    report.termination_step = file.end["termination_step"].get<std::size_t>();
  }
  json j = io::outcome_json(report);
  j["replay"] = json{{"transitions_checked", checked}, {"consistent", true}};
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_classify(const ClassifyFlags& f, std::ostream& out) {
  if (f.input.empty() == f.trajectory.empty()) throw UsageError("give exactly one of --input or --trajectory");
  std::string eps = f.epsilon;
  std::string model_text = f.model;
  std::optional<NumericPolicy> policy;
  if (!f.policy.empty()) policy = NumericPolicy::for_mode(parse_numeric_mode(f.policy));

  if (!f.trajectory.empty()) {
    const io::TrajectoryFile file = io::read_trajectory(f.trajectory);
    if (file.header.is_object() && file.header.contains("config")) {
      const json& cfg = file.header.at("config");
      if (eps.empty()) eps = io::literal_from_json(cfg.at("epsilon")).text();
      if (model_text.empty()) model_text = cfg.at("model").get<std::string>();
      if (!policy) policy = io::policy_from_json(cfg.at("policy"));
    }
    if (eps.empty() || model_text.empty()) throw UsageError("--epsilon and --model are required");
    const NumericPolicy p = policy.value_or(NumericPolicy::floating());
    if (p.mode == NumericMode::exact) return classify_trajectory_file<Rational>(file, eps, parse_model(model_text), p, out);
    return classify_trajectory_file<double>(file, eps, parse_model(model_text), p, out);
  }

  if (eps.empty() || model_text.empty()) throw UsageError("--epsilon and --model are required");
  const io::LiteralRows rows = io::read_matrix_csv(f.input);
  const NumericPolicy p = policy.value_or(NumericPolicy::floating());
  if (p.mode == NumericMode::exact) return classify_matrix<Rational>(rows, eps, parse_model(model_text), p, out);
  return classify_matrix<double>(rows, eps, parse_model(model_text), p, out);
}

int cmd_verify(const VerifyFlags& f, std::ostream& out) {
  if (f.trials < 1) throw UsageError("--trials must be at least 1");
  verify::Options o;
  o.trials = static_cast<std::size_t>(f.trials);
  o.seed = f.seed;
  o.mode = parse_numeric_mode(f.policy);
  o.inject_fault = f.inject_fault;
  const verify::Report report = verify::run(o);
  out << report.to_json().dump(2) << "\n";
  return report.passed() ? kOk : kPropertyFailed;
}

int cmd_plotdata(const PlotFlags& f, std::ostream& out) {
  const io::TrajectoryFile file = io::read_trajectory(f.trajectory);
  const std::size_t agents = file.states.front().size();
  const std::size_t topics = file.states.front().front().size();
  for (const auto& s : file.states) {
    if (s.size() != agents || s.front().size() != topics) throw std::runtime_error("trajectory changes shape");
  }
  fs::create_directories(f.out_dir);
  json written = json::array();
  for (std::size_t k = 0; k < topics; ++k) {
    std::ostringstream csv;
    csv << "step";
    for (std::size_t i = 0; i < agents; ++i) csv << ",agent_" << i + 1;
    csv << '\n';
    for (std::size_t t = 0; t < file.states.size(); ++t) {
      csv << t;
      for (std::size_t i = 0; i < agents; ++i) csv << ',' << format_scalar(file.states[t][i][k].as<double>());
      csv << '\n';
    }
    const fs::path path = fs::path(f.out_dir) / ("topic_" + std::to_string(k + 1) + ".csv");
    io::write_text(path, csv.str());
    written.push_back(path.string());
  }
  out << json{{"files", written}}.dump() << "\n";
  return kOk;
}

}  // namespace

int main(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-topic bounded-confidence opinion dynamics", "hk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kToolVersion));

  RunFlags rf;
  auto* run_cmd = app.add_subcommand("run", "simulate one configuration to termination");
  run_cmd->add_option("--model", rf.model, "ave | uniform");
  run_cmd->add_option("--epsilon", rf.epsilon, "confidence threshold (decimal or p/q)");
  run_cmd->add_option("--input", rf.input, "headerless CSV initial matrix");
  run_cmd->add_option("--n", rf.agents, "number of agents (random init)");
  run_cmd->add_option("--m", rf.topics, "number of topics (random init)");
  run_cmd->add_option("--box", rf.box, "LO,HI sampling interval for every topic")->capture_default_str();
  run_cmd->add_option("--seed", rf.seed, "generator seed")->capture_default_str();
  run_cmd->add_option("--policy", rf.policy, "exact | float")->capture_default_str();
  run_cmd->add_option("--max-steps", rf.max_steps, "update budget (default 10 N)");
  run_cmd->add_option("--out", rf.out_dir, "directory for trajectory, summary and manifest");
  run_cmd->add_option("--manifest", rf.manifest, "re-run the configuration recorded in a manifest");

  BatchFlags bf;
  auto* batch_cmd = app.add_subcommand("batch", "run a JSON list of configurations");
  batch_cmd->add_option("--sweep", bf.sweep, "JSON array of configs")->required();
  batch_cmd->add_option("--out", bf.out_dir, "output directory")->required();

  ClassifyFlags cf;
  auto* classify_cmd = app.add_subcommand("classify", "classify a snapshot or the end of a trajectory");
  classify_cmd->add_option("--input", cf.input, "headerless CSV matrix");
  classify_cmd->add_option("--trajectory", cf.trajectory, "JSONL trajectory (replayed, last state classified)");
  classify_cmd->add_option("--epsilon", cf.epsilon, "confidence threshold");
  classify_cmd->add_option("--model", cf.model, "ave | uniform");
  classify_cmd->add_option("--policy", cf.policy, "exact | float (default float, or the trajectory's)");

  VerifyFlags vf;
  auto* verify_cmd = app.add_subcommand("verify", "check every registered property on random cases");
  verify_cmd->add_option("--trials", vf.trials, "random cases per property")->capture_default_str();
  verify_cmd->add_option("--seed", vf.seed, "seed")->capture_default_str();
  verify_cmd->add_option("--policy", vf.policy, "exact | float")->capture_default_str();
  verify_cmd->add_flag("--inject-fault", vf.inject_fault)->group("");

  PlotFlags pf;
  auto* plot_cmd = app.add_subcommand("plotdata", "per-topic CSV series from a trajectory");
  plot_cmd->add_option("--trajectory", pf.trajectory, "JSONL trajectory")->required();
  plot_cmd->add_option("--out", pf.out_dir, "output directory")->required();

  std::vector<std::string> args = glue_negative_values(raw_args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(rf, out);
    if (*batch_cmd) return cmd_batch(bf, out);
    if (*classify_cmd) return cmd_classify(cf, out);
    if (*verify_cmd) return cmd_verify(vf, out);
    if (*plot_cmd) return cmd_plotdata(pf, out);
  } catch (const std::exception& e) {
    err << "hk: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace hk::cli
