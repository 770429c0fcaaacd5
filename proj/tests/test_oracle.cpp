#include <doctest.h>

#include "helpers.hpp"
#include "hk/avemodel.hpp"
#include "hk/oracle.hpp"
#include "hk/random.hpp"
#include "hk/uniform.hpp"

using namespace hk;
using namespace hk::test;

TEST_CASE_TEMPLATE("induced_seminorm_bruteforce", S, double, Rational) {
  using M = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
  CHECK(oracle::induced_seminorm_bruteforce<S>(M::Identity(2, 2)) == S(1));
  CHECK(oracle::induced_seminorm_bruteforce<S>(M::Constant(3, 3, S(1) / S(3))) == S(0));
  M A(3, 3);
  A << S(1) / S(2), S(1) / S(2), S(0), S(1) / S(2), S(1) / S(2), S(0), S(0), S(0), S(1);
  CHECK(oracle::induced_seminorm_bruteforce<S>(A) == S(1));
}

TEST_CASE_TEMPLATE("pairwise_seminorm", S, double, Rational) {
  CHECK(oracle::pairwise_seminorm<S>({S(1), S(4), S(2)}) == S(3));
  CHECK(oracle::pairwise_seminorm<S>({S(-1), S(1)}) == S(2));
}

TEST_CASE_TEMPLATE("scalar_hk_step", S, double, Rational) {
  const S half = parse_scalar<S>("1/2");
  CHECK(oracle::scalar_hk_step<S>({S(0), S(1), S(3)}, S(1)) == std::vector<S>{half, half, S(3)});
  CHECK(oracle::scalar_hk_step<S>({S(2), S(2)}, half) == std::vector<S>{S(2), S(2)});
  CHECK(oracle::scalar_hk_step<S>({S(0), half, S(1)}, half) ==
        std::vector<S>{parse_scalar<S>("1/4"), half, parse_scalar<S>("3/4")});
  CHECK_THROWS_AS(oracle::scalar_hk_step<S>({S(0)}, S(0)), std::invalid_argument);
}

TEST_CASE_TEMPLATE("naive_model_step matches the production steps", S, double, Rational) {
  random::Engine g(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto X = random::random_opinions<S>(g, 9, 4);
    const S eps = random::random_epsilon<S>(g);
    CHECK(oracle::naive_model_step(X, eps, Model::average_based) == ave_step(X, eps).next);
    CHECK(oracle::naive_model_step(X, eps, Model::uniform_affinity) == uniform_step(X, eps).next);
  }
}
