#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "hk/numeric.hpp"

namespace hk {

using Index = Eigen::Index;

/// N x m opinions; row i holds agent i's opinions on the m topics.
template <class Scalar>
using OpinionMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Per-agent mean opinion over all topics.
template <class Scalar>
using AverageVector = Vector<Scalar>;

/// Binary adjacency of the bounded-confidence graph. Reflexive and
/// symmetric for both models.
using InfluenceMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Throws std::invalid_argument unless X is non-empty with finite entries.
template <class Derived>
void validate_opinions(const Eigen::MatrixBase<Derived>& X) {
  if (X.rows() < 1 || X.cols() < 1) {
    throw std::invalid_argument("opinion matrix needs at least one agent and one topic");
  }
  for (Index i = 0; i < X.rows(); ++i) {
    for (Index j = 0; j < X.cols(); ++j) {
      if (!is_finite(X(i, j))) {
        throw std::invalid_argument("opinion matrix has a non-finite entry at (" +
                                    std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
  }
}

template <class Scalar>
Scalar default_row_sum_tol() {
  return tolerance<Scalar>(NumericPolicy::floating().row_sum_tol);
}

/// Square, nonnegative matrix whose rows each sum to one. The invariant is
/// checked on construction; nothing is renormalized.
template <class Scalar>
class RowStochasticMatrix {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit RowStochasticMatrix(Matrix entries, Scalar row_sum_tol = default_row_sum_tol<Scalar>())
      : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
      throw std::invalid_argument("row-stochastic matrix must be square and non-empty");
    }
    for (Index i = 0; i < entries_.rows(); ++i) {
      Scalar sum(0);
      for (Index k = 0; k < entries_.cols(); ++k) {
        if (!is_finite(entries_(i, k)) || entries_(i, k) < Scalar(0)) {
          throw std::invalid_argument("row-stochastic matrix has a negative or non-finite entry");
        }
        sum += entries_(i, k);
      }
      const Scalar dev = sum > Scalar(1) ? Scalar(sum - Scalar(1)) : Scalar(Scalar(1) - sum);
      if (dev > row_sum_tol) {
        throw std::invalid_argument("row " + std::to_string(i + 1) + " sums to " +
                                    format_scalar(sum) + ", not 1");
      }
    }
  }

  const Matrix& matrix() const { return entries_; }
  Index size() const { return entries_.rows(); }
  const Scalar& operator()(Index i, Index k) const { return entries_(i, k); }

 private:
  Matrix entries_;
};

/// x-bar = (1/m) X 1_m. Topics are summed left to right so float results do
/// not depend on vectorisation.
template <class Scalar>
AverageVector<Scalar> row_average(const OpinionMatrix<Scalar>& X) {
  AverageVector<Scalar> xbar(X.rows());
  for (Index i = 0; i < X.rows(); ++i) {
    Scalar sum(0);
    for (Index j = 0; j < X.cols(); ++j) sum += X(i, j);
    xbar(i) = sum / Scalar(X.cols());
  }
  return xbar;
}

/// Largest pairwise difference max_{i,j} |x_i - x_j|, i.e. the
/// incidence-weighted l-infinity seminorm of the complete graph, evaluated
/// as max - min.
template <class Derived>
typename Derived::Scalar disagreement_seminorm(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (x.size() == 0) return Scalar(0);
  return Scalar(x.maxCoeff() - x.minCoeff());
}

/// Closed form 1 - min_{i,j} sum_k min(A_ik, A_jk) of the seminorm induced on
/// row-stochastic matrices. Zero iff all rows coincide.
template <class Scalar>
Scalar induced_disagreement_seminorm(const RowStochasticMatrix<Scalar>& A) {
  const Index n = A.size();
  Scalar min_overlap(1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      Scalar overlap(0);
      for (Index k = 0; k < n; ++k) {
        overlap += std::min(A(i, k), A(j, k));
      }
      if (overlap < min_overlap) min_overlap = overlap;
    }
  }
  Scalar gamma = Scalar(1) - min_overlap;
  // Float rounding can leave the overlap a hair above one.
  if (gamma < Scalar(0)) gamma = Scalar(0);
  return gamma;
}

/// D^{-1} Phi: divide every row of the influence matrix by its degree.
template <class Scalar>
RowStochasticMatrix<Scalar> row_normalize(const InfluenceMatrix& phi) {
  const Index n = phi.rows();
  typename RowStochasticMatrix<Scalar>::Matrix A(n, phi.cols());
  for (Index i = 0; i < n; ++i) {
    const Index degree = phi.row(i).count();
    if (degree == 0) {
      throw std::domain_error("influence matrix row " + std::to_string(i + 1) +
                              " has no neighbours");
    }
    const Scalar weight = Scalar(1) / Scalar(degree);
    for (Index k = 0; k < phi.cols(); ++k) {
      A(i, k) = phi(i, k) ? weight : Scalar(0);
    }
  }
  return RowStochasticMatrix<Scalar>(std::move(A));
}

/// Range of opinions on topic j (0-based).
template <class Scalar>
Scalar topic_range(const OpinionMatrix<Scalar>& X, Index j) {
  if (j < 0 || j >= X.cols()) {
    throw std::out_of_range("topic index " + std::to_string(j + 1) + " out of range");
  }
  return disagreement_seminorm(X.col(j));
}

template <class Scalar>
Vector<Scalar> topic_ranges(const OpinionMatrix<Scalar>& X) {
  Vector<Scalar> r(X.cols());
  for (Index j = 0; j < X.cols(); ++j) r(j) = topic_range(X, j);
  return r;
}

/// max_k nu_k(X).
template <class Scalar>
Scalar global_range(const OpinionMatrix<Scalar>& X) {
  return topic_ranges(X).maxCoeff();
}

/// One bounded-confidence averaging step: next(i, j) is the mean of X(k, j)
/// over neighbours k of i. Sums run in ascending agent order and are divided
/// by the degree; in float mode the quotient is clamped to the hull of the
/// averaged values, which the exact mean always lies in.
template <class Scalar>
OpinionMatrix<Scalar> neighbour_average(const InfluenceMatrix& phi, const OpinionMatrix<Scalar>& X) {
  const Index n = X.rows();
  const Index m = X.cols();
  OpinionMatrix<Scalar> next(n, m);
  for (Index i = 0; i < n; ++i) {
    const Index degree = phi.row(i).count();
    if (degree == 0) {
      throw std::domain_error("influence matrix row " + std::to_string(i + 1) +
                              " has no neighbours");
    }
    for (Index j = 0; j < m; ++j) {
      Scalar sum(0);
      Scalar lo(0);
      Scalar hi(0);
      bool first = true;
      for (Index k = 0; k < n; ++k) {
        if (!phi(i, k)) continue;
        sum += X(k, j);
        if (first || X(k, j) < lo) lo = X(k, j);
        if (first || X(k, j) > hi) hi = X(k, j);
        first = false;
      }
      Scalar mean = sum / Scalar(degree);
      if constexpr (!is_exact_v<Scalar>) {
        mean = std::clamp(mean, lo, hi);
      }
      next(i, j) = mean;
    }
  }
  return next;
}

}  // namespace hk
