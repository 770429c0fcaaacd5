#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "hk/core.hpp"

namespace hk::random {

using Engine = std::mt19937_64;

/// Uniform integer in [lo, hi]. Bias from the modulo is irrelevant here.
inline std::int64_t uniform_int(Engine& g, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline double unit(Engine& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

/// Opinions on a coarse dyadic grid k / denominator with |k| <= span *
/// denominator. Coarse grids make ties and exact-epsilon gaps common, which
/// is where closed neighbour tests and order arguments get exercised.
template <class Scalar>
OpinionMatrix<Scalar> grid_opinions(Engine& g, Index n, Index m, std::int64_t denominator, std::int64_t span) {
  OpinionMatrix<Scalar> X(n, m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      X(i, j) = Scalar(uniform_int(g, -span * denominator, span * denominator)) / Scalar(denominator);
    }
  }
  return X;
}

/// Opinions uniform on [-1, 1] at full double resolution.
template <class Scalar>
OpinionMatrix<Scalar> continuous_opinions(Engine& g, Index n, Index m) {
  OpinionMatrix<Scalar> X(n, m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) X(i, j) = Scalar(2.0 * unit(g) - 1.0);
  }
  return X;
}

/// Mixes grid and continuous draws with random N in [1, max_n], m in
/// [1, max_m].
template <class Scalar>
OpinionMatrix<Scalar> random_opinions(Engine& g, Index max_n, Index max_m) {
  const Index n = uniform_int(g, 1, max_n);
  const Index m = uniform_int(g, 1, max_m);
  if (uniform_int(g, 0, 2) == 0) return continuous_opinions<Scalar>(g, n, m);
  return grid_opinions<Scalar>(g, n, m, uniform_int(g, 1, 8), uniform_int(g, 1, 3));
}

/// Grid opinions with every column sorted independently, so the agent
/// index order sorts all topics at once.
template <class Scalar>
OpinionMatrix<Scalar> ordered_opinions(Engine& g, Index n, Index m) {
  OpinionMatrix<Scalar> X = grid_opinions<Scalar>(g, n, m, uniform_int(g, 1, 8), uniform_int(g, 1, 3));
  for (Index j = 0; j < m; ++j) std::sort(X.col(j).data(), X.col(j).data() + n);
  return X;
}

/// Groups whose members lie within epsilon/2 of a group corner on every
/// topic, with corners 3 * epsilon apart on every topic. Non-neighbours are
/// then more than epsilon apart on every topic.
template <class Scalar>
OpinionMatrix<Scalar> separated_groups(Engine& g, Index n, Index m, const Scalar& epsilon) {
  OpinionMatrix<Scalar> X(n, m);
  const Index groups = uniform_int(g, 1, std::min<Index>(n, 4));
  for (Index i = 0; i < n; ++i) {
    const Index c = uniform_int(g, 0, groups - 1);
    for (Index j = 0; j < m; ++j) {
      const Scalar jitter = epsilon * Scalar(uniform_int(g, 0, 4)) / Scalar(8);
      X(i, j) = Scalar(3 * c) * epsilon + jitter;
    }
  }
  return X;
}

/// Threshold k/8 with k in [1, 16].
template <class Scalar>
Scalar random_epsilon(Engine& g) {
  return Scalar(uniform_int(g, 1, 16)) / Scalar(8);
}

/// Nonnegative integer weights in [0, 4] (zeros frequent) normalised per row.
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> row_stochastic_entries(Engine& g, Index n) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> A(n, n);
  for (Index i = 0; i < n; ++i) {
    std::int64_t total = 0;
    std::vector<std::int64_t> w(static_cast<std::size_t>(n));
    while (total == 0) {
      total = 0;
      for (auto& v : w) {
        v = std::max<std::int64_t>(0, uniform_int(g, -3, 4));
        total += v;
      }
    }
    for (Index k = 0; k < n; ++k) A(i, k) = Scalar(w[static_cast<std::size_t>(k)]) / Scalar(total);
  }
  return A;
}

template <class Scalar>
Vector<Scalar> random_vector(Engine& g, Index n) {
  Vector<Scalar> x(n);
  for (Index i = 0; i < n; ++i) x(i) = Scalar(uniform_int(g, -64, 64)) / Scalar(8);
  return x;
}

}  // namespace hk::random
