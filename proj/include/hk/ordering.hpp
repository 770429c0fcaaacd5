#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Core>

namespace hk {

/// Agent indices (0-based) listed in sorted position order.
using Permutation = std::vector<Eigen::Index>;

inline Permutation identity_permutation(Eigen::Index n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), Eigen::Index{0});
  return p;
}

/// Ascending order of the values, ties broken by agent index.
template <class Derived>
Permutation ascending_order(const Eigen::DenseBase<Derived>& values) {
  Permutation p = identity_permutation(values.size());
  std::stable_sort(p.begin(), p.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });
  return p;
}

/// True if reading `values` in the order `p` gives a non-decreasing sequence.
template <class Derived>
bool sorted_under(const Permutation& p, const Eigen::DenseBase<Derived>& values) {
  for (std::size_t h = 0; h + 1 < p.size(); ++h) {
    if (values(p[h + 1]) < values(p[h])) return false;
  }
  return true;
}

}  // namespace hk
