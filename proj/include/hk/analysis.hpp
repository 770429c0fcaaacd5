#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hk/avemodel.hpp"
#include "hk/core.hpp"
#include "hk/model.hpp"
#include "hk/uniform.hpp"

namespace hk {

/// Disjoint agent blocks covering 0..N-1. Canonical form: indices ascending
/// inside each block, blocks ordered by their smallest index.
class Partition {
 public:
  using Block = std::vector<Index>;

  Partition() = default;
  /// Throws std::invalid_argument unless the blocks are non-empty, disjoint
  /// and cover 0..agents-1.
  Partition(std::vector<Block> blocks, Index agents);

  /// Blocks from a label per agent (equal labels share a block).
  static Partition from_labels(const std::vector<Index>& labels);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  Index agents() const { return agents_; }
  std::vector<std::size_t> block_sizes() const;
  /// Block number of each agent.
  std::vector<std::size_t> labels() const;

  /// Every block of *this is a union of blocks of `finer`.
  bool coarsens(const Partition& finer) const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<Block> blocks_;
  Index agents_ = 0;
};

/// Classes of the transitive closure of "within tol" over the given items.
template <class Close>
Partition group_by_closure(Index count, Close&& close) {
  std::vector<Index> parent(static_cast<std::size_t>(count));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (Index a = 0; a < count; ++a) {
    for (Index b = a + 1; b < count; ++b) {
      if (close(a, b)) {
        const Index ra = find(a);
        const Index rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  std::vector<Index> labels(static_cast<std::size_t>(count));
  for (Index a = 0; a < count; ++a) labels[a] = find(a);
  return Partition::from_labels(labels);
}

template <class Scalar>
Scalar abs_diff(const Scalar& a, const Scalar& b) {
  return a > b ? Scalar(a - b) : Scalar(b - a);
}

/// Agents whose opinion rows agree within tol (exactly in exact mode).
template <class Scalar>
Partition row_equality_classes(const OpinionMatrix<Scalar>& X, const Scalar& tol) {
  return group_by_closure(X.rows(), [&](Index a, Index b) {
    for (Index j = 0; j < X.cols(); ++j) {
      if (abs_diff(X(a, j), X(b, j)) > tol) return false;
    }
    return true;
  });
}

template <class Derived>
Partition value_equality_classes(const Eigen::MatrixBase<Derived>& values,
                                 const typename Derived::Scalar& tol) {
  return group_by_closure(values.size(),
                          [&](Index a, Index b) { return !(abs_diff(values(a), values(b)) > tol); });
}

/// Row i is the mean of the rows of X in block i.
template <class Scalar>
OpinionMatrix<Scalar> cluster_means(const OpinionMatrix<Scalar>& X, const Partition& P) {
  if (P.agents() != X.rows()) {
    throw std::invalid_argument("partition does not cover the agents of the opinion matrix");
  }
  OpinionMatrix<Scalar> M(static_cast<Index>(P.size()), X.cols());
  for (std::size_t b = 0; b < P.size(); ++b) {
    const auto& block = P.blocks()[b];
    if (block.empty()) throw std::invalid_argument("partition has an empty block");
    for (Index j = 0; j < X.cols(); ++j) {
      Scalar sum(0);
      for (Index i : block) sum += X(i, j);
      M(static_cast<Index>(b), j) = sum / Scalar(static_cast<Index>(block.size()));
    }
  }
  return M;
}

/// For each topic, agents grouped by equal column value.
template <class Scalar>
std::vector<Partition> per_topic_partition(const OpinionMatrix<Scalar>& X, const NumericPolicy& policy) {
  const Scalar tol = tolerance<Scalar>(policy.cluster_tol);
  std::vector<Partition> out;
  out.reserve(static_cast<std::size_t>(X.cols()));
  for (Index j = 0; j < X.cols(); ++j) out.push_back(value_equality_classes(X.col(j), tol));
  return out;
}

/// One model step, without the analysis extras.
template <class Scalar>
OpinionMatrix<Scalar> model_next(Model model, const OpinionMatrix<Scalar>& X, const Scalar& epsilon) {
  const InfluenceMatrix phi = model == Model::average_based ? ave_neighbors(row_average(X), epsilon)
                                                           : linf_neighbors(X, epsilon);
  return neighbour_average(phi, X);
}

template <class Scalar>
bool states_match(const OpinionMatrix<Scalar>& a, const OpinionMatrix<Scalar>& b, const Scalar& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if constexpr (is_exact_v<Scalar>) {
    return a == b;
  } else {
    return (a - b).cwiseAbs().maxCoeff() <= tol;
  }
}

template <class Scalar>
bool is_fixed_point(Model model, const OpinionMatrix<Scalar>& X, const Scalar& epsilon,
                    const NumericPolicy& policy) {
  return states_match(model_next(model, X, epsilon), X, tolerance<Scalar>(policy.fixed_point_tol));
}

enum class OutcomeKind { consensus, clustering, not_terminated };

inline std::string to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::consensus: return "consensus";
    case OutcomeKind::clustering: return "clustering";
    case OutcomeKind::not_terminated: return "not-terminated";
  }
  return "unknown";
}

template <class Scalar>
struct OutcomeReport {
  OutcomeKind kind = OutcomeKind::not_terminated;
  Model model = Model::average_based;
  /// Common opinion row when kind == consensus.
  std::optional<Vector<Scalar>> consensus_value;
  /// Opinion-row equality classes (also set for consensus: one block).
  Partition partition;
  /// d x m; row i is the mean opinion row of block i.
  OpinionMatrix<Scalar> cluster_means;
  /// c*_i: mean over topics of cluster_means row i.
  Vector<Scalar> cluster_averages;
  /// Average-based: sorted cluster averages differ consecutively by more
  /// than epsilon. Uniform: blocks pairwise more than epsilon apart in
  /// l-infinity (an observation, not a theorem).
  bool separated = true;
  /// Average-based only: blocks of equal average opinion, and whether they
  /// differ from the opinion-row blocks.
  std::optional<Partition> average_partition;
  bool partition_mismatch = false;
  /// Whether the row averages form an epsilon-chain.
  bool epsilon_chain = false;
  std::optional<std::size_t> termination_step;
};

/// Consensus / clustering classification of a snapshot. Snapshots that the
/// selected model would still move are reported as not-terminated.
template <class Scalar>
OutcomeReport<Scalar> classify_outcome(const OpinionMatrix<Scalar>& X, const Scalar& epsilon, Model model,
                                       const NumericPolicy& policy) {
  validate_opinions(X);
  require_positive_epsilon(epsilon);
  OutcomeReport<Scalar> report;
  report.model = model;
  const AverageVector<Scalar> xbar = row_average(X);
  report.epsilon_chain = is_epsilon_chain(xbar, epsilon);
  if (!is_fixed_point(model, X, epsilon, policy)) {
    report.kind = OutcomeKind::not_terminated;
    return report;
  }

  const Scalar tol = tolerance<Scalar>(policy.cluster_tol);
  report.partition = row_equality_classes(X, tol);
  report.cluster_means = cluster_means(X, report.partition);
  report.cluster_averages = row_average(report.cluster_means);

  if (report.partition.size() == 1) {
    report.kind = OutcomeKind::consensus;
    report.consensus_value = report.cluster_means.row(0).transpose();
  } else {
    report.kind = OutcomeKind::clustering;
  }

  const Index d = static_cast<Index>(report.partition.size());
  if (model == Model::average_based) {
    std::vector<Scalar> c(report.cluster_averages.data(), report.cluster_averages.data() + d);
    std::sort(c.begin(), c.end());
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      if (!(c[i + 1] - c[i] > epsilon)) report.separated = false;
    }
    report.average_partition = value_equality_classes(xbar, tol);
    report.partition_mismatch = !(*report.average_partition == report.partition);
  } else {
    for (Index a = 0; a < d; ++a) {
      for (Index b = a + 1; b < d; ++b) {
        if (!(linf_distance(report.cluster_means, a, b) > epsilon)) report.separated = false;
      }
    }
  }
  return report;
}

}  // namespace hk
