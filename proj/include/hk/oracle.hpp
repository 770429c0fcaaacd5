#pragma once

// Brute-force references for the test suite. Nothing here calls into the
// production model or seminorm code; only the matrix aliases are shared.

#include <stdexcept>
#include <vector>

#include "hk/core.hpp"
#include "hk/model.hpp"

namespace hk::oracle {

template <class Scalar>
Scalar absolute(const Scalar& v) {
  return v < Scalar(0) ? Scalar(-v) : v;
}

/// max over row pairs of half the L1 distance between the rows.
template <class Scalar>
Scalar induced_seminorm_bruteforce(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A) {
  Scalar best(0);
  for (Index i = 0; i < A.rows(); ++i) {
    for (Index j = 0; j < A.rows(); ++j) {
      Scalar l1(0);
      for (Index k = 0; k < A.cols(); ++k) l1 += absolute(Scalar(A(i, k) - A(j, k)));
      const Scalar half = l1 / Scalar(2);
      if (half > best) best = half;
    }
  }
  return best;
}

/// max_{i,j} |x_i - x_j| by enumerating every ordered pair.
template <class Scalar>
Scalar pairwise_seminorm(const std::vector<Scalar>& x) {
  Scalar best(0);
  for (const Scalar& a : x) {
    for (const Scalar& b : x) {
      const Scalar d = absolute(Scalar(a - b));
      if (d > best) best = d;
    }
  }
  return best;
}

template <class Scalar>
Scalar mean_in_hull(const std::vector<Scalar>& values) {
  Scalar sum(0);
  for (const Scalar& v : values) sum += v;
  Scalar mean = sum / Scalar(static_cast<long>(values.size()));
  if constexpr (!is_exact_v<Scalar>) {
    Scalar lo = values.front();
    Scalar hi = values.front();
    for (const Scalar& v : values) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    if (mean < lo) mean = lo;
    if (mean > hi) mean = hi;
  }
  return mean;
}

/// Classic scalar Hegselmann-Krause update.
template <class Scalar>
std::vector<Scalar> scalar_hk_step(const std::vector<Scalar>& x, const Scalar& epsilon) {
  if (!(epsilon > Scalar(0))) throw std::invalid_argument("epsilon must be positive");
  std::vector<Scalar> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<Scalar> close;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (absolute(Scalar(x[k] - x[i])) <= epsilon) close.push_back(x[k]);
    }
    out[i] = mean_in_hull(close);
  }
  return out;
}

/// Direct component-wise evaluation of either model's update.
template <class Scalar>
OpinionMatrix<Scalar> naive_model_step(const OpinionMatrix<Scalar>& X, const Scalar& epsilon, Model model) {
  if (!(epsilon > Scalar(0))) throw std::invalid_argument("epsilon must be positive");
  const Index n = X.rows();
  const Index m = X.cols();

  std::vector<Scalar> avg(static_cast<std::size_t>(n), Scalar(0));
  for (Index i = 0; i < n; ++i) {
    Scalar s(0);
    for (Index j = 0; j < m; ++j) s += X(i, j);
    avg[static_cast<std::size_t>(i)] = s / Scalar(m);
  }

  auto neighbours = [&](Index i, Index k) {
    if (model == Model::average_based) {
      return absolute(Scalar(avg[static_cast<std::size_t>(k)] - avg[static_cast<std::size_t>(i)])) <= epsilon;
    }
    for (Index j = 0; j < m; ++j) {
      if (absolute(Scalar(X(i, j) - X(k, j))) > epsilon) return false;
    }
    return true;
  };

  OpinionMatrix<Scalar> next(n, m);
  for (Index i = 0; i < n; ++i) {
    std::vector<Index> members;
    for (Index k = 0; k < n; ++k) {
      if (neighbours(i, k)) members.push_back(k);
    }
    for (Index j = 0; j < m; ++j) {
      std::vector<Scalar> column;
      for (Index k : members) column.push_back(X(k, j));
      next(i, j) = mean_in_hull(column);
    }
  }
  return next;
}

}  // namespace hk::oracle
