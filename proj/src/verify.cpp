#include "hk/verify.hpp"

#include <functional>
#include <stdexcept>

#include "hk/analysis.hpp"
#include "hk/avemodel.hpp"
#include "hk/io.hpp"
#include "hk/oracle.hpp"
#include "hk/ordering.hpp"
#include "hk/random.hpp"
#include "hk/uniform.hpp"

namespace hk::verify {

using json = nlohmann::json;

namespace {

constexpr double kFloatTol = 1e-12;

template <class Scalar>
struct Case {
  OpinionMatrix<Scalar> X;
  Scalar epsilon;
  Model model = Model::average_based;
};

using Failure = std::optional<std::string>;

template <class Scalar>
json case_json(const Case<Scalar>& c, const std::string& message) {
  return json{{"model", to_string(c.model)},
              {"epsilon", io::scalar_json(c.epsilon)},
              {"matrix", io::matrix_json(c.X)},
              {"message", message}};
}

template <class Scalar>
Case<Scalar> drop_row(const Case<Scalar>& c, Index r) {
  Case<Scalar> d{OpinionMatrix<Scalar>(c.X.rows() - 1, c.X.cols()), c.epsilon, c.model};
  for (Index i = 0, o = 0; i < c.X.rows(); ++i) {
    if (i != r) d.X.row(o++) = c.X.row(i);
  }
  return d;
}

template <class Scalar>
Case<Scalar> drop_col(const Case<Scalar>& c, Index col) {
  Case<Scalar> d{OpinionMatrix<Scalar>(c.X.rows(), c.X.cols() - 1), c.epsilon, c.model};
  for (Index j = 0, o = 0; j < c.X.cols(); ++j) {
    if (j != col) d.X.col(o++) = c.X.col(j);
  }
  return d;
}

template <class Scalar>
class Suite {
 public:
  Suite(const Options& opt) : opt_(opt), tol_(is_exact_v<Scalar> ? Scalar(0) : Scalar(kFloatTol)) {}

  Report run() {
    Report report;
    report.options = opt_;
    add(report, "seminorm_axioms", false, [this](random::Engine& g) { return seminorm_axioms(g); });
    add(report, "seminorm_oracle", false, [this](random::Engine& g) { return seminorm_oracle(g); });
    add(report, "submultiplicativity", false, [this](random::Engine& g) { return submultiplicativity(g); });
    add(report, "row_normalize", false, [this](random::Engine& g) { return row_normalize_case(g); });
    add_opinion(report, "ave_range_contraction", false, ave_gen(), [this](const Case<Scalar>& c) { return ave_range_contraction(c); });
    add_opinion(report, "average_reduction", false, ave_gen(), [this](const Case<Scalar>& c) { return average_reduction(c); });
    add_opinion(report, "average_order_preservation", false, ave_gen(), [this](const Case<Scalar>& c) { return average_order(c); });
    add_opinion(report, "max_gap_stationarity", true, ave_gen(), [this](const Case<Scalar>& c) { return max_gap_stationarity(c); });
    add_opinion(report, "steady_state_collapse", true, ave_gen(), [this](const Case<Scalar>& c) { return steady_state_collapse(c); });
    add_opinion(report, "epsilon_chain_consensus", true, ave_gen(), [this](const Case<Scalar>& c) { return chain_consensus(c); });
    add_opinion(report, "per_topic_refinement", false, ave_gen(), [this](const Case<Scalar>& c) { return per_topic_refinement(c); });
    add_opinion(report, "consensus_bounds", false, ave_gen(), [this](const Case<Scalar>& c) { return consensus_bounds(c); });
    add_opinion(report, "uniform_global_range", false, uniform_gen(), [this](const Case<Scalar>& c) { return uniform_range(c); });
    add_opinion(report, "one_step_order_preservation", false, separated_gen(), [this](const Case<Scalar>& c) { return one_step_order(c); });
    add_opinion(report, "perpetual_order_preservation", false, ordered_gen(), [this](const Case<Scalar>& c) { return perpetual_order(c); });
    add_opinion(report, "naive_step_equivalence", false, any_gen(), [this](const Case<Scalar>& c) { return naive_equivalence(c); });
    return report;
  }

 private:
  using Generator = std::function<Case<Scalar>(random::Engine&)>;
  using Check = std::function<Failure(const Case<Scalar>&)>;

  const Options& opt_;
  Scalar tol_;
  std::uint64_t stream_ = 0;

  bool leq(const Scalar& a, const Scalar& b) const { return a <= b + tol_; }
  bool near(const Scalar& a, const Scalar& b) const { return abs_diff(a, b) <= tol_; }

  random::Engine engine() { return random::Engine(opt_.seed * 1000003ULL + (++stream_)); }

  bool skip(PropertyResult& r, bool exact_only) {
    if (exact_only && !is_exact_v<Scalar>) {
      r.skipped = true;
      r.skip_reason = "stated for exact arithmetic only";
      return true;
    }
    return false;
  }

  void add(Report& report, const std::string& name, bool exact_only,
           const std::function<std::optional<json>(random::Engine&)>& trial) {
    PropertyResult r;
    r.name = name;
    random::Engine g = engine();
    if (!skip(r, exact_only)) {
      for (std::size_t t = 0; t < opt_.trials; ++t) {
        ++r.cases;
        if (auto bad = trial(g)) {
          ++r.failures;
          if (!r.counterexample) r.counterexample = std::move(bad);
        }
      }
    }
    report.properties.push_back(std::move(r));
  }

  void add_opinion(Report& report, const std::string& name, bool exact_only, const Generator& gen,
                   const Check& check) {
    PropertyResult r;
    r.name = name;
    random::Engine g = engine();
    if (!skip(r, exact_only)) {
      for (std::size_t t = 0; t < opt_.trials; ++t) {
        ++r.cases;
        const Case<Scalar> c = gen(g);
        if (auto bad = check(c)) {
          ++r.failures;
          if (!r.counterexample) {
            auto [small, message] = shrink(c, *bad, check);
            r.counterexample = case_json(small, message);
          }
        }
      }
    }
    report.properties.push_back(std::move(r));
  }

  std::pair<Case<Scalar>, std::string> shrink(Case<Scalar> c, std::string message, const Check& check) {
    for (bool progress = true; progress;) {
      progress = false;
      for (Index i = 0; i < c.X.rows() && c.X.rows() > 1 && !progress; ++i) {
        Case<Scalar> d = drop_row(c, i);
        if (auto bad = check(d)) {
          c = std::move(d);
          message = *bad;
          progress = true;
        }
      }
      for (Index j = 0; j < c.X.cols() && c.X.cols() > 1 && !progress; ++j) {
        Case<Scalar> d = drop_col(c, j);
        if (auto bad = check(d)) {
          c = std::move(d);
          message = *bad;
          progress = true;
        }
      }
    }
    return {std::move(c), std::move(message)};
  }

  // --- generators ---

  Generator ave_gen() const {
    return [](random::Engine& g) {
      return Case<Scalar>{random::random_opinions<Scalar>(g, 15, 4), random::random_epsilon<Scalar>(g),
                          Model::average_based};
    };
  }
  Generator uniform_gen() const {
    return [](random::Engine& g) {
      return Case<Scalar>{random::random_opinions<Scalar>(g, 15, 4), random::random_epsilon<Scalar>(g),
                          Model::uniform_affinity};
    };
  }
  Generator separated_gen() const {
    return [](random::Engine& g) {
      const Scalar eps = random::random_epsilon<Scalar>(g);
      const Index n = random::uniform_int(g, 1, 15);
      const Index m = random::uniform_int(g, 1, 4);
      OpinionMatrix<Scalar> X = random::uniform_int(g, 0, 1) ? random::separated_groups<Scalar>(g, n, m, eps)
                                                             : random::random_opinions<Scalar>(g, 15, 4);
      return Case<Scalar>{std::move(X), eps, Model::uniform_affinity};
    };
  }
  Generator ordered_gen() const {
    return [](random::Engine& g) {
      const Index n = random::uniform_int(g, 1, 15);
      const Index m = random::uniform_int(g, 1, 4);
      OpinionMatrix<Scalar> X = random::uniform_int(g, 0, 3) ? random::ordered_opinions<Scalar>(g, n, m)
                                                             : random::random_opinions<Scalar>(g, 15, 4);
      return Case<Scalar>{std::move(X), random::random_epsilon<Scalar>(g), Model::uniform_affinity};
    };
  }
  Generator any_gen() const {
    return [](random::Engine& g) {
      const Model model = random::uniform_int(g, 0, 1) ? Model::average_based : Model::uniform_affinity;
      return Case<Scalar>{random::random_opinions<Scalar>(g, 15, 4), random::random_epsilon<Scalar>(g), model};
    };
  }

  // --- stepping (with optional fault) ---

  AveStepReport<Scalar> ave(const OpinionMatrix<Scalar>& X, const Scalar& eps) const {
    AveStepReport<Scalar> r = ave_step(X, eps);
    if (opt_.inject_fault && X.rows() >= 2) {
      r.next(0, 0) = r.next.col(0).maxCoeff() + Scalar(1);
      r.next_topic_ranges = topic_ranges(r.next);
    }
    return r;
  }

  OpinionMatrix<Scalar> step(const Case<Scalar>& c, const OpinionMatrix<Scalar>& X) const {
    if (c.model == Model::average_based) return ave(X, c.epsilon).next;
    return uniform_step(X, c.epsilon).next;
  }

  struct Run {
    std::vector<OpinionMatrix<Scalar>> states;
    bool terminated = false;
  };

  /// States up to and including the first repeat, capped at 10 N updates.
  Run trajectory(const Case<Scalar>& c) const {
    Run run;
    run.states.push_back(c.X);
    const Scalar fix_tol = tolerance<Scalar>(NumericPolicy::for_mode(mode_of<Scalar>()).fixed_point_tol);
    const std::size_t budget = 10 * static_cast<std::size_t>(c.X.rows());
    for (std::size_t t = 0; t < budget; ++t) {
      OpinionMatrix<Scalar> next = step(c, run.states.back());
      const bool fixed = states_match(next, run.states.back(), fix_tol);
      run.states.push_back(std::move(next));
      if (fixed) {
        run.terminated = true;
        break;
      }
    }
    return run;
  }

  static std::string at(std::size_t t) { return " at step " + std::to_string(t); }

  // --- seminorm properties ---

  std::optional<json> seminorm_axioms(random::Engine& g) const {
    const Index n = random::uniform_int(g, 1, 12);
    const Vector<Scalar> x = random::random_vector<Scalar>(g, n);
    const Vector<Scalar> y = random::random_vector<Scalar>(g, n);
    const Scalar a = Scalar(random::uniform_int(g, -16, 16)) / Scalar(8);
    const Scalar sx = disagreement_seminorm(x);
    std::string msg;
    if (!near(disagreement_seminorm(Vector<Scalar>(a * x)), (a < Scalar(0) ? Scalar(-a) : a) * sx)) msg = "homogeneity";
    if (!leq(disagreement_seminorm(Vector<Scalar>(x + y)), sx + disagreement_seminorm(y))) msg = "subadditivity";
    if (!near(sx, oracle::pairwise_seminorm(std::vector<Scalar>(x.data(), x.data() + n)))) msg = "pairwise definition";
    if (msg.empty()) return std::nullopt;
    return json{{"x", io::vector_json(x)}, {"y", io::vector_json(y)}, {"a", io::scalar_json(a)}, {"message", msg}};
  }

  std::optional<json> seminorm_oracle(random::Engine& g) const {
    const auto A = random::row_stochastic_entries<Scalar>(g, random::uniform_int(g, 1, 12));
    const Scalar gamma = induced_disagreement_seminorm(RowStochasticMatrix<Scalar>(A));
    const Scalar brute = oracle::induced_seminorm_bruteforce(A);
    std::string msg;
    if (!near(gamma, brute)) msg = "closed form " + format_scalar(gamma) + " != brute force " + format_scalar(brute);
    if (gamma < Scalar(0) || gamma > Scalar(1) + tol_) msg = "gamma outside [0,1]";
    bool identical = true;
    for (Index i = 1; i < A.rows(); ++i) identical = identical && A.row(i) == A.row(0);
    if (identical && !near(gamma, Scalar(0))) msg = "identical rows but gamma != 0";
    if constexpr (is_exact_v<Scalar>) {
      if (!identical && gamma == 0) msg = "distinct rows but gamma == 0";
    }
    if (msg.empty()) return std::nullopt;
    return json{{"A", io::matrix_json<Scalar>(A)}, {"message", msg}};
  }

  std::optional<json> submultiplicativity(random::Engine& g) const {
    const Index n = random::uniform_int(g, 1, 12);
    const auto A = random::row_stochastic_entries<Scalar>(g, n);
    const Vector<Scalar> x = random::random_vector<Scalar>(g, n);
    const Scalar gamma = induced_disagreement_seminorm(RowStochasticMatrix<Scalar>(A));
    const Vector<Scalar> Ax = A * x;
    if (leq(disagreement_seminorm(Ax), gamma * disagreement_seminorm(x))) return std::nullopt;
    return json{{"A", io::matrix_json<Scalar>(A)}, {"x", io::vector_json(x)}, {"message", "s(Ax) > gamma s(x)"}};
  }

  std::optional<json> row_normalize_case(random::Engine& g) const {
    const Index n = random::uniform_int(g, 1, 12);
    InfluenceMatrix phi(n, n);
    for (Index i = 0; i < n; ++i) {
      phi(i, i) = true;
      for (Index k = i + 1; k < n; ++k) phi(i, k) = phi(k, i) = random::uniform_int(g, 0, 1) == 1;
    }
    const RowStochasticMatrix<Scalar> A = row_normalize<Scalar>(phi);
    for (Index i = 0; i < n; ++i) {
      Scalar sum(0);
      for (Index k = 0; k < n; ++k) {
        sum += A(i, k);
        if ((A(i, k) > Scalar(0)) != phi(i, k)) return json{{"message", "support differs from influence"}};
      }
      if (!near(sum, Scalar(1))) return json{{"message", "row sum " + format_scalar(sum)}};
    }
    return std::nullopt;
  }

  // --- average-based model ---

  Failure ave_range_contraction(const Case<Scalar>& c) const {
    OpinionMatrix<Scalar> X = c.X;
    const std::size_t budget = 10 * static_cast<std::size_t>(X.rows());
    for (std::size_t t = 0; t < budget; ++t) {
      const AveStepReport<Scalar> r = ave(X, c.epsilon);
      if (r.influence != r.influence.transpose()) return "influence not symmetric" + at(t);
      if (!r.influence.diagonal().all()) return "influence not reflexive" + at(t);
      if (r.gamma < Scalar(0) || r.gamma > Scalar(1)) return "gamma outside [0,1]" + at(t);
      for (Index j = 0; j < X.cols(); ++j) {
        const Scalar before = topic_range(X, j);
        const Scalar after = topic_range(r.next, j);
        if (!leq(after, before)) return "range of topic " + std::to_string(j + 1) + " increased" + at(t);
        if (!leq(after, r.gamma * before)) return "contraction bound violated on topic " + std::to_string(j + 1) + at(t);
        const Scalar lo = X.col(j).minCoeff();
        const Scalar hi = X.col(j).maxCoeff();
        for (Index i = 0; i < X.rows(); ++i) {
          if (!leq(lo, r.next(i, j)) || !leq(r.next(i, j), hi)) return "entry left the topic box" + at(t);
        }
      }
      if (states_match(r.next, X, Scalar(0))) break;
      X = r.next;
    }
    return std::nullopt;
  }

  Failure average_reduction(const Case<Scalar>& c) const {
    OpinionMatrix<Scalar> X = c.X;
    for (std::size_t t = 0; t < 3; ++t) {
      const AveStepReport<Scalar> r = ave(X, c.epsilon);
      const AverageVector<Scalar> after = row_average(r.next);
      const AverageVector<Scalar> via_matrix = r.A.matrix() * r.averages;
      const std::vector<Scalar> via_oracle = oracle::scalar_hk_step(
          std::vector<Scalar>(r.averages.data(), r.averages.data() + r.averages.size()), c.epsilon);
      for (Index i = 0; i < after.size(); ++i) {
        if (!near(after(i), via_matrix(i))) return "row average of next != A xbar" + at(t);
        if (!near(after(i), via_oracle[static_cast<std::size_t>(i)])) return "row average of next != scalar HK step" + at(t);
      }
      X = r.next;
    }
    return std::nullopt;
  }

  Failure average_order(const Case<Scalar>& c) const {
    const Run run = trajectory(c);
    for (std::size_t t = 0; t + 1 < run.states.size(); ++t) {
      const Permutation p = ascending_order(row_average(run.states[t]));
      const AverageVector<Scalar> next = row_average(run.states[t + 1]);
      for (std::size_t h = 0; h + 1 < p.size(); ++h) {
        if (!leq(next(p[h]), next(p[h + 1]))) return "average ordering not preserved" + at(t);
      }
    }
    return std::nullopt;
  }

  Failure max_gap_stationarity(const Case<Scalar>& c) const {
    Run run = trajectory(c);
    if (!run.terminated) return "did not terminate";
    run.states.push_back(step(c, run.states.back()));
    std::vector<Scalar> gaps;
    for (const auto& X : run.states) gaps.push_back(max_average_gap(row_average(X)));
    const auto outcome = classify_outcome(run.states.back(), c.epsilon, c.model, NumericPolicy::exact());
    for (std::size_t t = 0; t + 2 < gaps.size(); ++t) {
      if (gaps[t] == gaps[t + 1] && gaps[t + 1] != gaps[t + 2]) return "max gap changed after a stationary step" + at(t);
      if (gaps[t] == gaps[t + 1] && gaps[t] > 0 && outcome.kind == OutcomeKind::consensus) {
        return "stationary positive gap but consensus reached";
      }
    }
    return std::nullopt;
  }

  Failure steady_state_collapse(const Case<Scalar>& c) const {
    const Run run = trajectory(c);
    if (!run.terminated) return "did not terminate within 10 N steps";
    const AverageVector<Scalar> xstar = row_average(run.states.back());
    std::size_t tstar = 0;
    while (row_average(run.states[tstar]) != xstar) ++tstar;

    const Partition P = value_equality_classes(xstar, Scalar(0));
    const OpinionMatrix<Scalar> X1 = step(c, run.states[tstar]);
    const OpinionMatrix<Scalar> X2 = step(c, X1);
    const OpinionMatrix<Scalar> M = cluster_means(run.states[tstar], P);
    for (std::size_t b = 0; b < P.size(); ++b) {
      for (Index i : P.blocks()[b]) {
        if (X1.row(i) != M.row(static_cast<Index>(b))) return "X(t*+1) is not the block-mean matrix";
      }
    }
    if (X2 != X1) return "X(t*+2) != X(t*+1)";
    const AverageVector<Scalar> cstar = row_average(M);
    std::vector<Scalar> sorted;
    for (std::size_t b = 0; b < P.size(); ++b) {
      if (cstar(static_cast<Index>(b)) != xstar(P.blocks()[b].front())) return "M 1/m does not reproduce c*";
      sorted.push_back(cstar(static_cast<Index>(b)));
    }
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t b = 0; b + 1 < sorted.size(); ++b) {
      if (!(sorted[b + 1] - sorted[b] > c.epsilon)) return "terminal clusters within epsilon";
    }
    const auto outcome = classify_outcome(X1, c.epsilon, c.model, NumericPolicy::exact());
    const OutcomeKind expected = P.size() == 1 ? OutcomeKind::consensus : OutcomeKind::clustering;
    if (outcome.kind != expected) return "terminal classification disagrees with average clustering";
    if (!(outcome.partition == P)) return "opinion blocks differ from average blocks";
    return std::nullopt;
  }

  Failure chain_consensus(const Case<Scalar>& c) const {
    const Run run = trajectory(c);
    if (!run.terminated) return "did not terminate";
    bool chain = true;
    for (const auto& X : run.states) chain = chain && is_epsilon_chain(row_average(X), c.epsilon);
    const auto outcome = classify_outcome(run.states.back(), c.epsilon, c.model, NumericPolicy::exact());
    if (chain != (outcome.kind == OutcomeKind::consensus)) {
      return chain ? "epsilon-chain throughout but no consensus" : "consensus without a persistent epsilon-chain";
    }
    return std::nullopt;
  }

  Failure per_topic_refinement(const Case<Scalar>& c) const {
    const Run run = trajectory(c);
    if (!run.terminated) return std::nullopt;
    const NumericPolicy policy = NumericPolicy::for_mode(mode_of<Scalar>());
    const auto outcome = classify_outcome(run.states.back(), c.epsilon, c.model, policy);
    if (outcome.kind == OutcomeKind::not_terminated) return "terminal state not classified";
    const auto topics = per_topic_partition(run.states.back(), policy);
    for (std::size_t j = 0; j < topics.size(); ++j) {
      if (!topics[j].coarsens(outcome.partition)) return "topic " + std::to_string(j + 1) + " splits a cluster";
      if (topics[j].size() > outcome.partition.size()) return "topic " + std::to_string(j + 1) + " has d_j > d";
    }
    return std::nullopt;
  }

  Failure consensus_bounds(const Case<Scalar>& c) const {
    const Run run = trajectory(c);
    if (!run.terminated) return std::nullopt;
    const NumericPolicy policy = NumericPolicy::for_mode(mode_of<Scalar>());
    const auto outcome = classify_outcome(run.states.back(), c.epsilon, c.model, policy);
    if (outcome.kind == OutcomeKind::not_terminated) return "terminal state not classified";
    const AverageVector<Scalar> xbar = row_average(run.states.back());
    for (std::size_t b = 0; b < outcome.partition.size(); ++b) {
      if (!near(outcome.cluster_averages(static_cast<Index>(b)), xbar(outcome.partition.blocks()[b].front()))) {
        return "cluster mean row average differs from the cluster's average opinion";
      }
    }
    if (outcome.consensus_value) {
      for (Index j = 0; j < c.X.cols(); ++j) {
        const Scalar v = (*outcome.consensus_value)(j);
        if (!leq(c.X.col(j).minCoeff(), v) || !leq(v, c.X.col(j).maxCoeff())) {
          return "consensus value outside the initial range of topic " + std::to_string(j + 1);
        }
      }
    }
    return std::nullopt;
  }

  // --- uniform affinity model ---

  Failure uniform_range(const Case<Scalar>& c) const {
    const Run run = trajectory(c);
    for (std::size_t t = 0; t + 1 < run.states.size(); ++t) {
      const auto& X = run.states[t];
      const auto& next = run.states[t + 1];
      const InfluenceMatrix phi = linf_neighbors(X, c.epsilon);
      if (phi != phi.transpose() || !phi.diagonal().all()) return "influence not symmetric/reflexive" + at(t);
      const Scalar g0 = global_range(X);
      if (!leq(global_range(next), g0)) return "global range increased" + at(t);
      for (Index j = 0; j < X.cols(); ++j) {
        if (!leq(topic_range(next, j), g0)) return "topic range above previous global range" + at(t);
        for (Index i = 0; i < X.rows(); ++i) {
          if (!leq(X.col(j).minCoeff(), next(i, j)) || !leq(next(i, j), X.col(j).maxCoeff())) {
            return "entry left the topic box" + at(t);
          }
        }
      }
    }
    return std::nullopt;
  }

  bool sorted_with_tol(const Permutation& p, const OpinionMatrix<Scalar>& X, Index j) const {
    for (std::size_t h = 0; h + 1 < p.size(); ++h) {
      if (!leq(X(p[h], j), X(p[h + 1], j))) return false;
    }
    return true;
  }

  Failure one_step_order(const Case<Scalar>& c) const {
    const Run run = trajectory(c);
    for (std::size_t t = 0; t + 1 < run.states.size(); ++t) {
      if (!one_step_preservation_hypothesis(run.states[t], c.epsilon)) continue;
      const auto orders = per_topic_orderings(run.states[t]);
      for (std::size_t k = 0; k < orders.size(); ++k) {
        if (!sorted_with_tol(orders[k], run.states[t + 1], static_cast<Index>(k))) {
          return "ordering of topic " + std::to_string(k + 1) + " changed although the hypothesis held" + at(t);
        }
      }
    }
    return std::nullopt;
  }

  Failure perpetual_order(const Case<Scalar>& c) const {
    const Run run = trajectory(c);
    std::optional<Permutation> sigma;
    for (std::size_t t = 0; t < run.states.size(); ++t) {
      const auto& X = run.states[t];
      if (sigma) {
        for (Index j = 0; j < X.cols(); ++j) {
          if (!sorted_with_tol(*sigma, X, j)) return "global ordering lost" + at(t);
        }
        if constexpr (is_exact_v<Scalar>) {
          if (!globally_ordered(X)) return "globally_ordered failed after succeeding" + at(t);
        }
      } else {
        sigma = globally_ordered(X);
      }
    }
    return std::nullopt;
  }

  Failure naive_equivalence(const Case<Scalar>& c) const {
    const OpinionMatrix<Scalar> fast = model_next(c.model, c.X, c.epsilon);
    const OpinionMatrix<Scalar> slow = oracle::naive_model_step(c.X, c.epsilon, c.model);
    if (fast != slow) return std::string("naive step differs from production step");
    return std::nullopt;
  }
};

}  // namespace

bool Report::passed() const {
  for (const auto& p : properties) {
    if (!p.passed()) return false;
  }
  return true;
}

json Report::to_json() const {
  json props = json::array();
  for (const auto& p : properties) {
    json j{{"name", p.name}, {"cases", p.cases}, {"failures", p.failures}, {"passed", p.passed()}};
    if (p.skipped) {
      j["skipped"] = true;
      j["reason"] = p.skip_reason;
    }
    if (p.counterexample) j["counterexample"] = *p.counterexample;
    props.push_back(std::move(j));
  }
  return json{{"trials", options.trials},
              {"seed", options.seed},
              {"policy", to_string(options.mode)},
              {"passed", passed()},
              {"properties", std::move(props)}};
}

std::vector<std::string> property_names() {
  Options o;
  o.trials = 1;
  o.mode = NumericMode::floating;
  std::vector<std::string> names;
  for (const auto& p : Suite<double>(o).run().properties) names.push_back(p.name);
  return names;
}

Report run(const Options& options) {
  if (options.trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (options.mode == NumericMode::exact) return Suite<Rational>(options).run();
  return Suite<double>(options).run();
}

}  // namespace hk::verify
