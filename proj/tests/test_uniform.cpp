#include <doctest.h>

#include "helpers.hpp"
#include "hk/oracle.hpp"
#include "hk/sim.hpp"
#include "hk/uniform.hpp"

using namespace hk;
using namespace hk::test;

TEST_CASE_TEMPLATE("linf_neighbors", S, double, Rational) {
  const auto X = mat<S>({{"0", "1"}, {"1/2", "1/2"}, {"2", "0"}});
  CHECK(linf_distance(X, 0, 1) == parse_scalar<S>("1/2"));
  CHECK(linf_distance(X, 0, 2) == S(2));
  CHECK(linf_distance(X, 1, 2) == parse_scalar<S>("3/2"));
  CHECK(linf_neighbors(X, S(1)) == adjacency({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}}));
  CHECK(linf_neighbors(mat<S>({{"0", "2"}, {"2", "0"}}), parse_scalar<S>("1/2")) == adjacency({{1, 0}, {0, 1}}));
  CHECK(linf_neighbors(mat<S>({{"3", "1"}, {"3", "1"}}), parse_scalar<S>("1/8")) == InfluenceMatrix::Constant(2, 2, true));
}

TEST_CASE_TEMPLATE("uniform_step", S, double, Rational) {
  const auto X = mat<S>({{"0", "1"}, {"1/2", "1/2"}, {"2", "0"}});
  const auto r = uniform_step(X, S(1));
  CHECK(r.next == mat<S>({{"1/4", "3/4"}, {"1/4", "3/4"}, {"2", "0"}}));
  CHECK(r.global_range_before == S(2));
  CHECK(r.global_range_after == parse_scalar<S>("7/4"));

  const auto C = mat<S>({{"5", "-1"}, {"5", "-1"}});
  CHECK(uniform_step(C, S(1)).next == C);

  const auto scalar = mat<S>({{"0"}, {"1/2"}, {"1"}});
  const auto next = uniform_step(scalar, parse_scalar<S>("1/2")).next;
  CHECK(next == mat<S>({{"1/4"}, {"1/2"}, {"3/4"}}));
  const auto hk1 = oracle::scalar_hk_step<S>({S(0), parse_scalar<S>("1/2"), S(1)}, parse_scalar<S>("1/2"));
  for (Index i = 0; i < 3; ++i) CHECK(next(i, 0) == hk1[static_cast<std::size_t>(i)]);
}

TEST_CASE_TEMPLATE("one_step_preservation_hypothesis", S, double, Rational) {
  CHECK(one_step_preservation_hypothesis(mat<S>({{"0", "0"}, {"1/5", "1/5"}, {"5", "5"}}), S(1)));
  CHECK_FALSE(one_step_preservation_hypothesis(mat<S>({{"0", "0"}, {"1/5", "5"}}), S(1)));
  CHECK(one_step_preservation_hypothesis(mat<S>({{"0", "0"}, {"1/2", "1/2"}}), S(1)));
}

TEST_CASE_TEMPLATE("globally_ordered", S, double, Rational) {
  CHECK(globally_ordered(mat<S>({{"0", "0"}, {"1", "2"}, {"3", "5"}})) == identity_permutation(3));
  CHECK_FALSE(globally_ordered(mat<S>({{"0", "2"}, {"1", "0"}})).has_value());
  CHECK(globally_ordered(mat<S>({{"9", "9"}})) == identity_permutation(1));
  CHECK(globally_ordered(mat<S>({{"3", "5"}, {"0", "0"}, {"1", "2"}})) == Permutation{1, 2, 0});
  // a tie on topic 1 is resolved by topic 2
  CHECK(globally_ordered(mat<S>({{"1", "4"}, {"1", "2"}, {"0", "0"}})) == Permutation{2, 1, 0});
}

TEST_CASE("order swap when the hypothesis fails (hand instance)") {
  // Agents 1 and 3 interact, agent 2 is isolated by topic 2 but sits between
  // them on topic 1; averaging pulls agent 1 past agent 2.
  const auto X = mat<Q>({{"0", "0"}, {"2/5", "5"}, {"1", "0"}});
  const Q eps(1);
  CHECK_FALSE(one_step_preservation_hypothesis(X, eps));
  const auto r = uniform_step(X, eps);
  CHECK(r.next == mat<Q>({{"1/2", "0"}, {"2/5", "5"}, {"1/2", "0"}}));
  CHECK(X(0, 0) < X(1, 0));
  CHECK(r.next(0, 0) > r.next(1, 0));
  CHECK_FALSE(orderings_preserved(r.per_topic_orderings, r.next));
}

TEST_CASE("order swap when the hypothesis fails (archived seeded run)") {
  // N=10, m=2, eps=0.8, box [-1,1], seed 0 of the pinned generator, frozen.
  const auto X = mat<Q>({{"-0.6804132732590784", "0.9842904192596575"},
                         {"-0.9208619483102687", "0.19498932538934333"},
                         {"0.0845699399852089", "-0.8856804170693529"},
                         {"0.26305674901990184", "-0.1528589402923739"},
                         {"0.6845210303715721", "0.8126027840878527"},
                         {"-0.15370366907691002", "0.3110516991189125"},
                         {"0.8608621978733559", "-0.31122888341212773"},
                         {"-0.4907698897536408", "-0.11065818702866759"},
                         {"0.5803787879789761", "0.39084081323857545"},
                         {"0.1153610635852742", "-0.42513911409605964"}});
  CHECK(X.cast<double>() == sample_initial(10, 2, {Interval{-1.0, 1.0}}, 0));
  const Q eps(4, 5);
  CHECK_FALSE(one_step_preservation_hypothesis(X, eps));
  const auto r = uniform_step(X, eps);
  CHECK_FALSE(orderings_preserved(r.per_topic_orderings, r.next));
  // agents 1 and 2 trade places on topic 1
  CHECK(X(1, 0) < X(0, 0));
  CHECK(r.next(1, 0) > r.next(0, 0));
}
