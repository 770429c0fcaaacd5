#include <doctest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "hk/cli.hpp"
#include "hk/io.hpp"

using namespace hk;
using namespace hk::test;
using hk::io::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result hk_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("run with a random initial state") {
  const auto r = hk_cli({"run", "--model", "uniform", "--n", "10", "--m", "2", "--epsilon", "0.8", "--box", "-1,1",
                         "--seed", "7"});
  CHECK(r.code == cli::kOk);
  const json summary = json::parse(r.out);
  CHECK(summary.at("terminated") == true);
}

TEST_CASE("run on the three-agent input") {
  const fs::path dir = scratch_dir("cli_three");
  io::write_text(dir / "threeagents.csv", "0,0\n1,1\n3,3\n");
  const auto r = hk_cli({"run", "--model", "ave", "--input", (dir / "threeagents.csv").string(), "--epsilon", "1",
                         "--policy", "exact"});
  REQUIRE(r.code == cli::kOk);
  const json summary = json::parse(r.out);
  CHECK(summary.at("kind") == "clustering");
  CHECK(summary.at("partition") == json::parse("[[1,2],[3]]"));
  CHECK(summary.at("termination_step") == 1);
}

TEST_CASE("run rejects invalid input") {
  CHECK(hk_cli({"run", "--model", "ave", "--n", "3", "--m", "1", "--epsilon", "-1"}).code == cli::kUsage);
  CHECK(hk_cli({"run", "--model", "ave", "--n", "3", "--m", "1"}).code == cli::kUsage);
  CHECK(hk_cli({"run", "--model", "xyz", "--n", "3", "--m", "1", "--epsilon", "1"}).code == cli::kUsage);
  CHECK(hk_cli({"run", "--model", "ave", "--n", "3", "--m", "1", "--epsilon", "1", "--box", "1,0"}).code ==
        cli::kUsage);
  CHECK(hk_cli({"run", "--model", "ave", "--input", "/nonexistent.csv", "--epsilon", "1"}).code == cli::kUsage);
  CHECK(hk_cli({"run", "--bogus"}).code == cli::kUsage);
  CHECK(hk_cli({}).code == cli::kUsage);
}

TEST_CASE("run reports exhausted budgets") {
  const auto r = hk_cli({"run", "--model", "ave", "--n", "12", "--m", "1", "--epsilon", "0.3", "--box", "0,4",
                         "--max-steps", "1", "--seed", "1"});
  CHECK(r.code == cli::kNotTerminated);
}

TEST_CASE("manifest re-run is byte-identical in exact mode") {
  const fs::path dir = scratch_dir("cli_manifest");
  const auto first = hk_cli({"run", "--model", "uniform", "--n", "6", "--m", "2", "--epsilon", "0.8", "--seed", "3",
                             "--policy", "exact", "--out", (dir / "a").string()});
  REQUIRE(first.code == cli::kOk);
  const auto second =
      hk_cli({"run", "--manifest", (dir / "a" / "manifest.json").string(), "--out", (dir / "b").string()});
  REQUIRE(second.code == cli::kOk);
  CHECK(io::read_text(dir / "a" / "trajectory.jsonl") == io::read_text(dir / "b" / "trajectory.jsonl"));
  CHECK(io::read_text(dir / "a" / "summary.json") == io::read_text(dir / "b" / "summary.json"));
}

TEST_CASE("classify") {
  const fs::path dir = scratch_dir("cli_classify");
  io::write_text(dir / "clusters.csv", "1,1\n1,1\n3,0\n3,0\n");
  io::write_text(dir / "consensus.csv", "2,7\n2,7\n");
  io::write_text(dir / "moving.csv", "0,0\n0.1,0.1\n");

  auto r = hk_cli({"classify", "--input", (dir / "clusters.csv").string(), "--epsilon", "0.3", "--model", "ave",
                   "--policy", "exact"});
  REQUIRE(r.code == cli::kOk);
  json j = json::parse(r.out);
  CHECK(j.at("kind") == "clustering");
  CHECK(j.at("partition") == json::parse("[[1,2],[3,4]]"));
  CHECK(j.at("cluster_means") == json::parse(R"([["1","1"],["3","0"]])"));

  r = hk_cli({"classify", "--input", (dir / "consensus.csv").string(), "--epsilon", "1", "--model", "uniform"});
  j = json::parse(r.out);
  CHECK(j.at("kind") == "consensus");
  CHECK(j.at("consensus_value") == json::parse("[2.0,7.0]"));

  r = hk_cli({"classify", "--input", (dir / "moving.csv").string(), "--epsilon", "1", "--model", "ave"});
  CHECK(json::parse(r.out).at("kind") == "not-terminated");

  CHECK(hk_cli({"classify", "--input", (dir / "moving.csv").string(), "--model", "ave"}).code == cli::kUsage);
  CHECK(hk_cli({"classify", "--epsilon", "1", "--model", "ave"}).code == cli::kUsage);
}

TEST_CASE("classify replays a trajectory") {
  const fs::path dir = scratch_dir("cli_replay");
  REQUIRE(hk_cli({"run", "--model", "ave", "--n", "8", "--m", "3", "--epsilon", "0.5", "--seed", "2", "--policy",
                  "exact", "--out", dir.string()})
              .code == cli::kOk);
  const auto r = hk_cli({"classify", "--trajectory", (dir / "trajectory.jsonl").string()});
  REQUIRE(r.code == cli::kOk);
  const json j = json::parse(r.out);
  CHECK(j.at("replay").at("consistent") == true);
  CHECK(j.at("kind") != "not-terminated");

  // Tamper with one state: replay must notice.
  std::string text = io::read_text(dir / "trajectory.jsonl");
  std::istringstream in(text);
  std::string line;
  std::string tampered;
  int n = 0;
  while (std::getline(in, line)) {
    if (n++ == 2) {
      json rec = json::parse(line);
      rec["state"][0][0] = "12345";
      line = rec.dump();
    }
    tampered += line + "\n";
  }
  io::write_text(dir / "tampered.jsonl", tampered);
  CHECK(hk_cli({"classify", "--trajectory", (dir / "tampered.jsonl").string()}).code == cli::kUsage);
}

TEST_CASE("batch") {
  const fs::path dir = scratch_dir("cli_batch");
  json sweep = json::array();
  for (int s = 0; s < 100; ++s) {
    sweep.push_back({{"model", "uniform"}, {"epsilon", 0.8}, {"n", 10}, {"m", 2}, {"box", {-1, 1}}, {"seed", s},
                     {"max_steps", 100}});
  }
  sweep.push_back(sweep[5]);
  io::write_text(dir / "sweep.json", sweep.dump());
  const auto r = hk_cli({"batch", "--sweep", (dir / "sweep.json").string(), "--out", (dir / "out").string()});
  REQUIRE(r.code == cli::kOk);
  const std::string csv = io::read_text(dir / "out" / "aggregate.csv");
  CHECK(count_lines(csv) == 102);
  CHECK(csv.substr(0, csv.find('\n')) == "seed,termination_step,outcome,cluster_count");
  std::vector<std::string> lines;
  std::istringstream in(csv);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  CHECK(lines[6] == lines[101]);
  CHECK(fs::exists(dir / "out" / "summary_0001.json"));
  CHECK(fs::exists(dir / "out" / "summary_0101.json"));
  CHECK(json::parse(io::read_text(dir / "out" / "summary_0006.json")).at("terminated") == true);
}

TEST_CASE("batch failure handling") {
  const fs::path dir = scratch_dir("cli_batch_bad");
  io::write_text(dir / "empty.json", "[]");
  CHECK(hk_cli({"batch", "--sweep", (dir / "empty.json").string(), "--out", (dir / "o1").string()}).code ==
        cli::kUsage);
  io::write_text(dir / "garbage.json", "{not json");
  CHECK(hk_cli({"batch", "--sweep", (dir / "garbage.json").string(), "--out", (dir / "o2").string()}).code ==
        cli::kUsage);

  io::write_text(dir / "mixed.json",
                 R"([{"model":"ave","epsilon":-1,"n":3,"m":1,"box":[0,1]},{"model":"ave","epsilon":1,"n":3,"m":1,"box":[0,1]}])");
  const auto r = hk_cli({"batch", "--sweep", (dir / "mixed.json").string(), "--out", (dir / "o3").string()});
  CHECK(r.code == cli::kOk);
  const std::string csv = io::read_text(dir / "o3" / "aggregate.csv");
  CHECK(csv.find(",error,") != std::string::npos);
}

TEST_CASE("verify") {
  CHECK(hk_cli({"verify", "--trials", "20", "--policy", "exact"}).code == cli::kOk);
  CHECK(hk_cli({"verify", "--trials", "20", "--policy", "float"}).code == cli::kOk);
  CHECK(hk_cli({"verify", "--trials", "0"}).code == cli::kUsage);
  const auto bad = hk_cli({"verify", "--trials", "20", "--inject-fault"});
  CHECK(bad.code == cli::kPropertyFailed);
  const json j = json::parse(bad.out);
  bool found = false;
  for (const auto& p : j.at("properties")) {
    if (p.at("failures").get<int>() > 0 && p.contains("counterexample")) found = true;
  }
  CHECK(found);
}

TEST_CASE("plotdata") {
  const fs::path dir = scratch_dir("cli_plot");
  REQUIRE(hk_cli({"run", "--model", "uniform", "--n", "10", "--m", "2", "--epsilon", "0.8", "--seed", "7", "--out",
                  dir.string()})
              .code == cli::kOk);
  const auto traj = io::read_trajectory(dir / "trajectory.jsonl");
  REQUIRE(hk_cli({"plotdata", "--trajectory", (dir / "trajectory.jsonl").string(), "--out", (dir / "plot").string()})
              .code == cli::kOk);
  for (const char* name : {"topic_1.csv", "topic_2.csv"}) {
    const std::string csv = io::read_text(dir / "plot" / name);
    const std::string header = csv.substr(0, csv.find('\n'));
    CHECK(std::count(header.begin(), header.end(), ',') == 10);
    CHECK(count_lines(csv) == traj.states.size() + 1);
  }
  CHECK_FALSE(fs::exists(dir / "plot" / "topic_3.csv"));

  io::write_text(dir / "single.jsonl", "{\"step\":0,\"state\":[[\"1/2\",1],[0.25,\"0\"]]}\n");
  REQUIRE(hk_cli({"plotdata", "--trajectory", (dir / "single.jsonl").string(), "--out", (dir / "plot1").string()})
              .code == cli::kOk);
  CHECK(io::read_text(dir / "plot1" / "topic_1.csv") == "step,agent_1,agent_2\n0,0.5,0.25\n");
  CHECK(count_lines(io::read_text(dir / "plot1" / "topic_2.csv")) == 2);

  CHECK(hk_cli({"plotdata", "--trajectory", (dir / "missing.jsonl").string(), "--out", (dir / "p").string()}).code ==
        cli::kUsage);
}
