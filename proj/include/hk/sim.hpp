#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hk/analysis.hpp"
#include "hk/avemodel.hpp"
#include "hk/core.hpp"
#include "hk/model.hpp"
#include "hk/numeric.hpp"
#include "hk/uniform.hpp"

namespace hk {

/// Generator used by sample_initial: std::mt19937_64 seeded with the seed,
/// one draw per entry in row-major order, u = (draw >> 11) * 2^-53,
/// value = low + (high - low) * u.
inline constexpr const char* kGeneratorName = "mt19937_64";

struct Interval {
  double low = 0.0;
  double high = 0.0;
  bool operator==(const Interval&) const = default;
};

struct BoxInit {
  Index agents = 1;
  Index topics = 1;
  /// One interval shared by all topics, or one per topic.
  std::vector<Interval> box{Interval{}};
  std::uint64_t seed = 0;
  bool operator==(const BoxInit&) const = default;
};

struct ExplicitInit {
  std::vector<std::vector<Literal>> rows;
  std::string source;
  bool operator==(const ExplicitInit&) const = default;
};

struct SimulationConfig {
  Model model = Model::average_based;
  Literal epsilon;
  /// Defaults to 10 * N when unset.
  std::optional<std::size_t> max_steps;
  NumericPolicy policy;
  std::variant<ExplicitInit, BoxInit> init;

  Index agents() const;
  Index topics() const;
  std::size_t effective_max_steps() const;
  /// Throws std::invalid_argument on any violated constraint.
  void validate() const;
};

/// I.i.d. uniform entries on per-topic intervals. Throws on low > high or
/// non-finite bounds.
OpinionMatrix<double> sample_initial(Index agents, Index topics, const std::vector<Interval>& box,
                                     std::uint64_t seed);

template <class Scalar>
OpinionMatrix<Scalar> literal_matrix(const std::vector<std::vector<Literal>>& rows) {
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("empty opinion matrix");
  const Index n = static_cast<Index>(rows.size());
  const Index m = static_cast<Index>(rows.front().size());
  OpinionMatrix<Scalar> X(n, m);
  for (Index i = 0; i < n; ++i) {
    if (static_cast<Index>(rows[static_cast<std::size_t>(i)].size()) != m) {
      throw std::invalid_argument("row " + std::to_string(i + 1) + " has " +
                                  std::to_string(rows[static_cast<std::size_t>(i)].size()) +
                                  " entries, expected " + std::to_string(m));
    }
    for (Index j = 0; j < m; ++j) {
      X(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].template as<Scalar>();
    }
  }
  return X;
}

template <class Scalar>
OpinionMatrix<Scalar> initial_state(const SimulationConfig& config) {
  if (const auto* e = std::get_if<ExplicitInit>(&config.init)) {
    return literal_matrix<Scalar>(e->rows);
  }
  const auto& b = std::get<BoxInit>(config.init);
  return sample_initial(b.agents, b.topics, b.box, b.seed).template cast<Scalar>();
}

/// Metadata recorded for every state of a trajectory.
template <class Scalar>
struct StepRecord {
  InfluenceMatrix influence;
  std::optional<Scalar> gamma;  // average-based only
  Vector<Scalar> topic_ranges;
  Scalar global_range;
};

template <class Scalar>
struct StepResult {
  OpinionMatrix<Scalar> next;
  StepRecord<Scalar> record;  // describes the input state
};

template <class Scalar>
StepResult<Scalar> model_step(Model model, const OpinionMatrix<Scalar>& X, const Scalar& epsilon) {
  if (model == Model::average_based) {
    auto r = ave_step(X, epsilon);
    Scalar range = r.topic_ranges.maxCoeff();
    return {std::move(r.next), {std::move(r.influence), std::move(r.gamma), std::move(r.topic_ranges), std::move(range)}};
  }
  auto r = uniform_step(X, epsilon);
  return {std::move(r.next), {std::move(r.influence), std::nullopt, topic_ranges(X), std::move(r.global_range_before)}};
}

/// states[t+1] is the model step of states[t]; records[t] describes
/// states[t]. When terminated, states[termination_step] is the first fixed
/// point and the confirming step states[termination_step + 1] is kept.
template <class Scalar>
struct Trajectory {
  std::vector<OpinionMatrix<Scalar>> states;
  std::vector<StepRecord<Scalar>> records;
  std::optional<std::size_t> termination_step;
  bool terminated = false;

  std::size_t steps_run() const { return states.empty() ? 0 : states.size() - 1; }
};

/// Advances until a fixed point (exact equality in exact mode, max-abs
/// change <= fixed_point_tol in float mode) or until max_steps updates.
template <class Scalar>
Trajectory<Scalar> simulate(Model model, OpinionMatrix<Scalar> X0, const Scalar& epsilon,
                            std::size_t max_steps, const NumericPolicy& policy) {
  validate_opinions(X0);
  require_positive_epsilon(epsilon);
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  const Scalar tol = tolerance<Scalar>(policy.fixed_point_tol);

  Trajectory<Scalar> traj;
  traj.states.push_back(std::move(X0));
  for (std::size_t t = 0; t < max_steps; ++t) {
    StepResult<Scalar> step = model_step(model, traj.states.back(), epsilon);
    traj.records.push_back(std::move(step.record));
    const bool fixed = states_match(step.next, traj.states.back(), tol);
    traj.states.push_back(std::move(step.next));
    if (fixed) {
      traj.terminated = true;
      traj.termination_step = t;
      break;
    }
  }
  // Describe the last state too, so records and states line up.
  traj.records.push_back(model_step(model, traj.states.back(), epsilon).record);
  return traj;
}

template <class Scalar>
Trajectory<Scalar> run(const SimulationConfig& config) {
  config.validate();
  if (config.policy.mode != mode_of<Scalar>()) {
    throw std::invalid_argument("numeric policy does not match the scalar backend");
  }
  return simulate<Scalar>(config.model, initial_state<Scalar>(config), config.epsilon.as<Scalar>(),
                          config.effective_max_steps(), config.policy);
}

/// Per-config result of a batch. Failures carry `error` and leave the rest
/// defaulted.
struct BatchSummary {
  std::size_t index = 0;
  SimulationConfig config;
  std::optional<std::string> error;
  bool terminated = false;
  std::optional<std::size_t> termination_step;
  std::size_t steps_run = 0;
  OutcomeKind kind = OutcomeKind::not_terminated;
  std::size_t cluster_count = 0;
  std::vector<double> final_topic_ranges;
  double final_global_range = 0.0;
};

template <class Scalar>
OutcomeReport<Scalar> classify_trajectory(const SimulationConfig& config, const Trajectory<Scalar>& traj) {
  const Scalar epsilon = config.epsilon.as<Scalar>();
  OutcomeReport<Scalar> report = classify_outcome(traj.states.back(), epsilon, config.model, config.policy);
  report.termination_step = traj.termination_step;
  return report;
}

/// Runs one config under its own policy and condenses the result.
BatchSummary summarize_run(const SimulationConfig& config, std::size_t index = 0);

/// Runs every config, possibly concurrently. Output order follows the input
/// and does not depend on scheduling. `threads` of 0 means
/// min(hardware_concurrency, HK_MAX_THREADS when set).
std::vector<BatchSummary> batch_run(const std::vector<SimulationConfig>& configs, unsigned threads = 0);

}  // namespace hk
