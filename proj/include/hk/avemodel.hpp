#pragma once

#include <algorithm>
#include <vector>

#include "hk/core.hpp"
#include "hk/model.hpp"

namespace hk {

/// Outcome of one synchronous step of the average-based model.
template <class Scalar>
struct AveStepReport {
  OpinionMatrix<Scalar> next;
  AverageVector<Scalar> averages;       // x-bar(t), before the step
  InfluenceMatrix influence;
  RowStochasticMatrix<Scalar> A;
  Scalar gamma;                         // induced seminorm of A
  Vector<Scalar> topic_ranges;          // nu_j(X(t))
  Vector<Scalar> next_topic_ranges;     // nu_j(X(t+1))
};

/// Agents k and i interact iff |xbar_k - xbar_i| <= epsilon (closed test,
/// no slack).
template <class Scalar>
InfluenceMatrix ave_neighbors(const AverageVector<Scalar>& xbar, const Scalar& epsilon) {
  require_positive_epsilon(epsilon);
  const Index n = xbar.size();
  InfluenceMatrix phi(n, n);
  for (Index i = 0; i < n; ++i) {
    phi(i, i) = true;
    for (Index k = i + 1; k < n; ++k) {
      const Scalar gap = xbar(k) > xbar(i) ? Scalar(xbar(k) - xbar(i)) : Scalar(xbar(i) - xbar(k));
      const bool close = gap <= epsilon;
      phi(i, k) = close;
      phi(k, i) = close;
    }
  }
  return phi;
}

template <class Scalar>
AveStepReport<Scalar> ave_step(const OpinionMatrix<Scalar>& X, const Scalar& epsilon) {
  validate_opinions(X);
  AverageVector<Scalar> averages = row_average(X);
  InfluenceMatrix phi = ave_neighbors(averages, epsilon);
  RowStochasticMatrix<Scalar> A = row_normalize<Scalar>(phi);
  OpinionMatrix<Scalar> next = neighbour_average(phi, X);
  Scalar gamma = induced_disagreement_seminorm(A);
  Vector<Scalar> before = topic_ranges(X);
  Vector<Scalar> after = topic_ranges(next);
  return {std::move(next), std::move(averages), std::move(phi), std::move(A),
          std::move(gamma), std::move(before), std::move(after)};
}

template <class Scalar>
Scalar max_average_gap(const AverageVector<Scalar>& xbar) {
  return disagreement_seminorm(xbar);
}

/// Sorted averages have every consecutive gap <= epsilon.
template <class Scalar>
bool is_epsilon_chain(const AverageVector<Scalar>& xbar, const Scalar& epsilon) {
  std::vector<Scalar> sorted(xbar.data(), xbar.data() + xbar.size());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
    if (sorted[k + 1] - sorted[k] > epsilon) return false;
  }
  return true;
}

}  // namespace hk
