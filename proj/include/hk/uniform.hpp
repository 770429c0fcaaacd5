#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "hk/core.hpp"
#include "hk/model.hpp"
#include "hk/ordering.hpp"

namespace hk {

template <class Scalar>
struct UniformStepReport {
  OpinionMatrix<Scalar> next;
  InfluenceMatrix influence;
  Scalar global_range_before;
  Scalar global_range_after;
  /// One permutation per topic sorting column k of X(t), ties by index.
  std::vector<Permutation> per_topic_orderings;
};

template <class Scalar>
Scalar linf_distance(const OpinionMatrix<Scalar>& X, Index i, Index k) {
  Scalar d(0);
  for (Index j = 0; j < X.cols(); ++j) {
    const Scalar diff = X(i, j) > X(k, j) ? Scalar(X(i, j) - X(k, j)) : Scalar(X(k, j) - X(i, j));
    if (diff > d) d = diff;
  }
  return d;
}

/// Agents interact iff their opinion rows are within epsilon topic-wise.
template <class Scalar>
InfluenceMatrix linf_neighbors(const OpinionMatrix<Scalar>& X, const Scalar& epsilon) {
  require_positive_epsilon(epsilon);
  const Index n = X.rows();
  InfluenceMatrix phi(n, n);
  for (Index i = 0; i < n; ++i) {
    phi(i, i) = true;
    for (Index k = i + 1; k < n; ++k) {
      const bool close = linf_distance(X, i, k) <= epsilon;
      phi(i, k) = close;
      phi(k, i) = close;
    }
  }
  return phi;
}

template <class Scalar>
std::vector<Permutation> per_topic_orderings(const OpinionMatrix<Scalar>& X) {
  std::vector<Permutation> orders;
  orders.reserve(static_cast<std::size_t>(X.cols()));
  for (Index k = 0; k < X.cols(); ++k) orders.push_back(ascending_order(X.col(k)));
  return orders;
}

template <class Scalar>
UniformStepReport<Scalar> uniform_step(const OpinionMatrix<Scalar>& X, const Scalar& epsilon) {
  validate_opinions(X);
  InfluenceMatrix phi = linf_neighbors(X, epsilon);
  OpinionMatrix<Scalar> next = neighbour_average(phi, X);
  Scalar before = global_range(X);
  Scalar after = global_range(next);
  return {std::move(next), std::move(phi), std::move(before), std::move(after),
          per_topic_orderings(X)};
}

/// Every pair of non-neighbours is more than epsilon apart on every topic.
/// Vacuously true when all agents interact.
template <class Scalar>
bool one_step_preservation_hypothesis(const OpinionMatrix<Scalar>& X, const Scalar& epsilon) {
  const InfluenceMatrix phi = linf_neighbors(X, epsilon);
  for (Index i = 0; i < X.rows(); ++i) {
    for (Index k = i + 1; k < X.rows(); ++k) {
      if (phi(i, k)) continue;
      for (Index j = 0; j < X.cols(); ++j) {
        const Scalar diff = X(i, j) > X(k, j) ? Scalar(X(i, j) - X(k, j)) : Scalar(X(k, j) - X(i, j));
        if (!(diff > epsilon)) return false;
      }
    }
  }
  return true;
}

/// An agent order that sorts every topic column at once, if one exists.
/// Rows are sorted lexicographically (topic 1 first, later topics break ties,
/// agent index last) and every column is then verified; when some valid
/// order exists this one is valid and lexicographically smallest.
template <class Scalar>
std::optional<Permutation> globally_ordered(const OpinionMatrix<Scalar>& X) {
  Permutation p = identity_permutation(X.rows());
  std::stable_sort(p.begin(), p.end(), [&](Index a, Index b) {
    for (Index j = 0; j < X.cols(); ++j) {
      if (X(a, j) < X(b, j)) return true;
      if (X(b, j) < X(a, j)) return false;
    }
    return false;
  });
  for (Index j = 0; j < X.cols(); ++j) {
    if (!sorted_under(p, X.col(j))) return std::nullopt;
  }
  return p;
}

/// Whether each topic's ordering of X(t) still sorts the same topic of
/// X(t+1) (ties allowed).
template <class Scalar>
bool orderings_preserved(const std::vector<Permutation>& orders, const OpinionMatrix<Scalar>& next) {
  for (std::size_t k = 0; k < orders.size(); ++k) {
    if (!sorted_under(orders[k], next.col(static_cast<Index>(k)))) return false;
  }
  return true;
}

}  // namespace hk
