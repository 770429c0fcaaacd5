#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "hk/io.hpp"

using namespace hk;
using namespace hk::test;
using hk::io::json;

TEST_CASE("parse_rational") {
  CHECK(parse_rational("0.8") == q(4, 5));
  CHECK(parse_rational("08") == q(8));
  CHECK(parse_rational("0.08") == q(2, 25));
  CHECK(parse_rational("-1.25e1") == q(-25, 2));
  CHECK(parse_rational("5e-3") == q(1, 200));
  CHECK(parse_rational(" 3/6 ") == q(1, 2));
  CHECK(parse_rational("-007/14") == q(-1, 2));
  CHECK(parse_rational(".5") == q(1, 2));
  CHECK(parse_rational("+2.") == q(2));
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "1e", "--1", "0x10", "1/2/3", "."}) {
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
  }
}

TEST_CASE("parse_double") {
  CHECK(parse_double("0.8") == 0.8);
  CHECK(parse_double("1/4") == 0.25);
  CHECK(parse_double("+3") == 3.0);
  CHECK_THROWS_AS(parse_double("nan"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double("1e999"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double("1,5"), std::invalid_argument);
}

TEST_CASE("format_scalar round trips") {
  CHECK(format_scalar(0.1) == "0.1");
  CHECK(parse_double(format_scalar(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_scalar(q(-3, 6)) == "-1/2");
  CHECK(format_scalar(q(4)) == "4");
}

TEST_CASE("Literal keeps text per backend") {
  const Literal text("0.1");
  CHECK(text.as<Rational>() == q(1, 10));
  CHECK(text.as<double>() == 0.1);
  const Literal binary(0.1);
  CHECK(binary.as<Rational>() != q(1, 10));
  CHECK(binary.as<Rational>() == Rational(0.1));
  CHECK(binary.text() == "0.1");
  CHECK_THROWS_AS(Literal("x"), std::invalid_argument);
}

TEST_CASE("matrix CSV") {
  const auto rows = io::parse_matrix_csv("0,0\r\n1/2, 1.5\n\n3,3\n");
  REQUIRE(rows.size() == 3);
  const auto X = literal_matrix<Rational>(rows);
  CHECK(X == mat<Q>({{"0", "0"}, {"1/2", "3/2"}, {"3", "3"}}));
  CHECK(io::format_matrix_csv(X) == "0,0\n1/2,3/2\n3,3\n");
  CHECK_THROWS_AS(io::parse_matrix_csv("1,2\n3\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_matrix_csv("1,zz\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_matrix_csv("\n\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::read_matrix_csv("/nonexistent/matrix.csv"), std::runtime_error);
}

TEST_CASE("JSON scalars") {
  CHECK(io::scalar_json(q(1, 3)) == json("1/3"));
  CHECK(io::scalar_json(0.5) == json(0.5));
  CHECK(io::literal_from_json(json(0.8)).as<Rational>() == q(4, 5));
  CHECK(io::literal_from_json(json("2/3")).as<Rational>() == q(2, 3));
  CHECK(io::literal_from_json(json(3)).as<Rational>() == q(3));
  CHECK_THROWS(io::literal_from_json(json(true)));
  CHECK(io::adjacency_json(adjacency({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}})) == json::parse("[[1,2],[1,2],[3]]"));
  CHECK(io::partition_json(Partition({{0, 2}, {1}}, 3)) == json::parse("[[1,3],[2]]"));
}

TEST_CASE("config JSON round trip") {
  SimulationConfig box;
  box.model = Model::uniform_affinity;
  box.epsilon = Literal("0.8");
  box.max_steps = 100;
  box.policy = NumericPolicy::exact();
  box.init = BoxInit{10, 2, {Interval{-1.0, 1.0}}, 7};
  const auto back = io::config_from_json(io::config_json(box));
  CHECK(back.model == box.model);
  CHECK(back.epsilon.as<Rational>() == q(4, 5));
  CHECK(back.max_steps == box.max_steps);
  CHECK(back.policy == box.policy);
  CHECK(std::get<BoxInit>(back.init) == std::get<BoxInit>(box.init));

  SimulationConfig expl;
  expl.epsilon = Literal("1");
  expl.init = ExplicitInit{io::parse_matrix_csv("0,0\n1,1\n1/3,3\n"), "three.csv"};
  const auto back2 = io::config_from_json(io::config_json(expl));
  CHECK(literal_matrix<Rational>(std::get<ExplicitInit>(back2.init).rows) ==
        mat<Q>({{"0", "0"}, {"1", "1"}, {"1/3", "3"}}));
  // The effective budget is recorded so re-runs do not depend on defaults.
  CHECK(back2.max_steps == std::size_t{30});
}

TEST_CASE("config JSON accepts the documented shapes") {
  const auto c = io::config_from_json(json::parse(
      R"({"model":"ave","epsilon":"1/2","n":3,"m":2,"box":[[0,1],[2,3]],"seed":4,"policy":"exact"})"));
  CHECK(c.model == Model::average_based);
  CHECK(c.policy == NumericPolicy::exact());
  CHECK(std::get<BoxInit>(c.init).box.size() == 2);
  CHECK_THROWS_AS(io::config_from_json(json::parse(R"({"model":"ave"})")), std::invalid_argument);
  CHECK_THROWS_AS(io::config_from_json(json::parse(R"({"model":"bogus","epsilon":1,"n":1,"m":1,"box":[0,1]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::config_from_json(json::parse(R"({"model":"ave","epsilon":1,"n":1,"m":1,"box":[1,0]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::config_from_json(json::parse("[1]")), std::invalid_argument);
}

TEST_CASE("trajectory JSONL round trip") {
  SimulationConfig c;
  c.epsilon = Literal("1");
  c.policy = NumericPolicy::exact();
  c.init = ExplicitInit{io::parse_matrix_csv("0,0\n1,1\n3,3\n"), ""};
  const auto traj = run<Rational>(c);
  const std::string text = io::format_trajectory(c, traj);

  std::istringstream in(text);
  const auto file = io::parse_trajectory(in);
  CHECK(file.header.at("format_revision") == io::kFormatRevision);
  CHECK(file.header.at("generator").is_null());
  CHECK(file.end.at("terminated") == true);
  CHECK(file.end.at("termination_step") == 1);
  REQUIRE(file.states.size() == traj.states.size());
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    CHECK(literal_matrix<Rational>(file.states[t]) == traj.states[t]);
  }

  const auto line_start = text.find('\n') + 1;
  const json first = json::parse(text.substr(line_start, text.find('\n', line_start) - line_start));
  CHECK(first.at("neighbors") == json::parse("[[1,2],[1,2],[3]]"));
  CHECK(first.at("gamma") == "1");
  CHECK(first.at("topic_ranges") == json::parse(R"(["3","3"])"));

  std::istringstream broken("{\"step\":1,\"state\":[[\"0\"]]}\n");
  CHECK_THROWS_AS(io::parse_trajectory(broken), std::runtime_error);
  std::istringstream empty("");
  CHECK_THROWS_AS(io::parse_trajectory(empty), std::runtime_error);
}

TEST_CASE("manifest reproduces the config") {
  SimulationConfig c;
  c.model = Model::uniform_affinity;
  c.epsilon = Literal("0.8");
  c.policy = NumericPolicy::exact();
  c.init = BoxInit{6, 2, {Interval{-1.0, 1.0}}, 99};
  const json m = io::manifest_json(c, "trajectory.jsonl", "summary.json");
  CHECK(m.at("generator").at("name") == kGeneratorName);
  const auto back = io::config_from_manifest(m);
  CHECK(io::format_trajectory(back, run<Rational>(back)) == io::format_trajectory(c, run<Rational>(c)));
  CHECK_THROWS_AS(io::config_from_manifest(json::object()), std::invalid_argument);
}
