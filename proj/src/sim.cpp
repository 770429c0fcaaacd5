#include "hk/sim.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

namespace hk {

Index SimulationConfig::agents() const {
  if (const auto* e = std::get_if<ExplicitInit>(&init)) return static_cast<Index>(e->rows.size());
  return std::get<BoxInit>(init).agents;
}

Index SimulationConfig::topics() const {
  if (const auto* e = std::get_if<ExplicitInit>(&init)) {
    return e->rows.empty() ? 0 : static_cast<Index>(e->rows.front().size());
  }
  return std::get<BoxInit>(init).topics;
}

std::size_t SimulationConfig::effective_max_steps() const {
  return max_steps.value_or(10 * static_cast<std::size_t>(std::max<Index>(agents(), 1)));
}

namespace {

void validate_box(Index topics, const std::vector<Interval>& box) {
  if (box.size() != 1 && static_cast<Index>(box.size()) != topics) {
    throw std::invalid_argument("box must give one interval or one per topic");
  }
  for (const auto& iv : box) {
    if (!std::isfinite(iv.low) || !std::isfinite(iv.high)) {
      throw std::invalid_argument("box bounds must be finite");
    }
    if (iv.low > iv.high) throw std::invalid_argument("box interval has low > high");
  }
}

}  // namespace

void SimulationConfig::validate() const {
  policy.validate();
  if (policy.mode == NumericMode::exact) {
    if (!(epsilon.as<Rational>() > 0)) throw std::invalid_argument("epsilon must be positive");
  } else {
    require_positive_epsilon(epsilon.as<double>());
  }
  if (max_steps && *max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  if (const auto* b = std::get_if<BoxInit>(&init)) {
    if (b->agents < 1 || b->topics < 1) throw std::invalid_argument("N and m must be positive");
    validate_box(b->topics, b->box);
  } else {
    const auto& e = std::get<ExplicitInit>(init);
    if (e.rows.empty() || e.rows.front().empty()) throw std::invalid_argument("empty opinion matrix");
    for (const auto& row : e.rows) {
      if (row.size() != e.rows.front().size()) throw std::invalid_argument("ragged opinion matrix");
    }
  }
}

OpinionMatrix<double> sample_initial(Index agents, Index topics, const std::vector<Interval>& box,
                                     std::uint64_t seed) {
  if (agents < 1 || topics < 1) throw std::invalid_argument("N and m must be positive");
  validate_box(topics, box);
  std::mt19937_64 gen(seed);
  OpinionMatrix<double> X(agents, topics);
  for (Index i = 0; i < agents; ++i) {
    for (Index j = 0; j < topics; ++j) {
      const Interval& iv = box.size() == 1 ? box.front() : box[static_cast<std::size_t>(j)];
      const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      X(i, j) = iv.low == iv.high ? iv.low : iv.low + (iv.high - iv.low) * u;
    }
  }
  return X;
}

namespace {

template <class Scalar>
void fill_summary(BatchSummary& s) {
  const Trajectory<Scalar> traj = run<Scalar>(s.config);
  const OutcomeReport<Scalar> outcome = classify_trajectory(s.config, traj);
  s.terminated = traj.terminated;
  s.termination_step = traj.termination_step;
  s.steps_run = traj.steps_run();
  s.kind = outcome.kind;
  s.cluster_count = outcome.kind == OutcomeKind::not_terminated ? 0 : outcome.partition.size();
  const auto& rec = traj.records.back();
  for (Index j = 0; j < rec.topic_ranges.size(); ++j) s.final_topic_ranges.push_back(to_double(rec.topic_ranges(j)));
  s.final_global_range = to_double(rec.global_range);
}

unsigned resolve_threads(unsigned requested, std::size_t jobs) {
  unsigned n = requested;
  if (n == 0) {
    n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("HK_MAX_THREADS")) {
      char* end = nullptr;
      const unsigned long v = std::strtoul(cap, &end, 10);
      if (end != cap && *end == '\0' && v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

}  // namespace

BatchSummary summarize_run(const SimulationConfig& config, std::size_t index) {
  BatchSummary s;
  s.index = index;
  s.config = config;
  try {
    if (config.policy.mode == NumericMode::exact) {
      fill_summary<Rational>(s);
    } else {
      fill_summary<double>(s);
    }
  } catch (const std::exception& e) {
    s.error = e.what();
  }
  return s;
}

std::vector<BatchSummary> batch_run(const std::vector<SimulationConfig>& configs, unsigned threads) {
  std::vector<BatchSummary> out(configs.size());
  if (configs.empty()) return out;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) out[i] = summarize_run(configs[i], i);
  };
  const unsigned n = resolve_threads(threads, configs.size());
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return out;
}

}  // namespace hk
