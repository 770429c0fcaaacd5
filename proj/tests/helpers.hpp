#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include "hk/core.hpp"
#include "hk/numeric.hpp"

namespace hk::test {

using Q = Rational;

inline Q q(const char* text) { return parse_rational(text); }
inline Q q(int num, int den = 1) { return Q(num, den); }

/// Builds an opinion matrix from text literals, e.g. {{"0", "1/2"}, {"3", "3"}}.
template <class Scalar>
OpinionMatrix<Scalar> mat(std::initializer_list<std::initializer_list<const char*>> rows) {
  const Index n = static_cast<Index>(rows.size());
  const Index m = static_cast<Index>(rows.begin()->size());
  OpinionMatrix<Scalar> X(n, m);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const char* v : row) X(i, j++) = parse_scalar<Scalar>(v);
    ++i;
  }
  return X;
}

template <class Scalar>
Vector<Scalar> vec(std::initializer_list<const char*> values) {
  Vector<Scalar> v(static_cast<Index>(values.size()));
  Index i = 0;
  for (const char* x : values) v(i++) = parse_scalar<Scalar>(x);
  return v;
}

inline InfluenceMatrix adjacency(std::initializer_list<std::initializer_list<int>> rows) {
  const Index n = static_cast<Index>(rows.size());
  InfluenceMatrix phi(n, static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (int v : row) phi(i, j++) = v != 0;
    ++i;
  }
  return phi;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("hk_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace hk::test
