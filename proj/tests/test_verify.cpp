#include <doctest.h>

#include <algorithm>

#include "hk/verify.hpp"

using namespace hk;

TEST_CASE("every property holds on random cases") {
  for (NumericMode mode : {NumericMode::exact, NumericMode::floating}) {
    verify::Options o;
    o.trials = 60;
    o.seed = 17;
    o.mode = mode;
    const verify::Report report = verify::run(o);
    CHECK(report.properties.size() == verify::property_names().size());
    for (const auto& p : report.properties) {
      INFO(p.name << " (" << to_string(mode) << ")");
      CHECK(p.passed());
      if (!p.skipped) CHECK(p.cases == o.trials);
    }
    CHECK(report.passed());
  }
}

TEST_CASE("exact-only properties are skipped in float mode") {
  verify::Options o;
  o.trials = 5;
  o.mode = NumericMode::floating;
  const auto report = verify::run(o);
  const auto skipped = std::count_if(report.properties.begin(), report.properties.end(),
                                     [](const auto& p) { return p.skipped; });
  CHECK(skipped == 3);
}

TEST_CASE("fault injection is caught and shrunk") {
  verify::Options o;
  o.trials = 30;
  o.inject_fault = true;
  const auto report = verify::run(o);
  CHECK_FALSE(report.passed());
  const auto it = std::find_if(report.properties.begin(), report.properties.end(),
                               [](const auto& p) { return p.name == "ave_range_contraction"; });
  REQUIRE(it != report.properties.end());
  CHECK(it->failures > 0);
  REQUIRE(it->counterexample.has_value());
  CHECK(report.to_json().at("passed") == false);
}

TEST_CASE("zero trials is rejected") {
  verify::Options o;
  o.trials = 0;
  CHECK_THROWS_AS(verify::run(o), std::invalid_argument);
}
