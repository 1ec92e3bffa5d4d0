#include <string>

#include "doctest.h"

#include "fitpa/config.hpp"
#include "fitpa/errors.hpp"
#include "fitpa/types.hpp"

using namespace fitpa;

namespace {

RunConfig load(const std::string& text) { return load_config(text, {}); }

}  // namespace

TEST_CASE("minimal configs resolve with defaults") {
  const auto rc = load(R"({"model": {"type": "plain", "m": 2}})");
  CHECK(rc.ta.m == 2);
  CHECK(rc.ta.is_linear);
  CHECK(std::get<PlainFitness>(rc.fm).alpha == Rat(0));
  CHECK(rc.seed == 1);
  CHECK(rc.steps == 10000);
  CHECK(rc.record_every == 0);
  CHECK(rc.runs == 100);
  CHECK(rc.threads == 0);
  CHECK(rc.engine == Engine::Auto);
  CHECK(rc.format == "csv");
  CHECK(rc.out_dir == ".");
  CHECK(!rc.scan.has_value());
  CHECK(rc.g0.degree.size() == 2);  // model default: pair
}

TEST_CASE("rational fields accept integers, floats, and a/b strings") {
  const auto rc = load(R"({"model": {"type": "multiplicative", "m": 2,
      "p": [0, 0.25, "1/1"], "phi": "3/2", "alpha": -0.5}})");
  CHECK(rc.ta.p[0] == Rat(0));
  CHECK(rc.ta.p[1] == Rat(1, 4));  // 0.25 is exactly representable
  CHECK(rc.ta.p[2] == Rat(1));
  const auto& f = std::get<MultiplicativeFitness>(rc.fm);
  CHECK(f.phi == Rat(3, 2));
  CHECK(f.alpha == Rat(-1, 2));
}

TEST_CASE("additive model requires both alphas") {
  const auto rc = load(R"({"model": {"type": "additive", "m": 2,
      "alpha_red": 0, "alpha_blue": "2/1"}})");
  const auto& f = std::get<AdditiveFitness>(rc.fm);
  CHECK(f.alpha_red == Rat(0));
  CHECK(f.alpha_blue == Rat(2));
  CHECK(rc.g0.degree.size() == 4);  // additive default: monochrome pairs

  CHECK_THROWS_AS(load(R"({"model": {"type": "additive", "m": 2, "alpha_red": 0}})"),
                  ConfigError);
}

TEST_CASE("p and linear interact correctly") {
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 2,
      "p": [0, 0.5, 1], "linear": true}})"),
                  ConfigError);
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 2, "linear": false}})"), ConfigError);
  const auto rc = load(R"({"model": {"type": "plain", "m": 3, "linear": true}})");
  CHECK(rc.ta.is_linear);
  CHECK(rc.ta.p[2] == Rat(2, 3));
  const auto rc2 = load(R"({"model": {"type": "plain", "m": 2, "p": [0, "3/4", 1]}})");
  CHECK(!rc2.ta.is_linear);
  CHECK(rc2.ta.p[1] == Rat(3, 4));
}

TEST_CASE("invalid inputs fail with ConfigError") {
  CHECK_THROWS_AS(load("not json at all"), ConfigError);
  CHECK_THROWS_AS(load("[1,2,3]"), ConfigError);
  CHECK_THROWS_AS(load(R"({})"), ConfigError);                              // missing model
  CHECK_THROWS_AS(load(R"({"model": {"m": 2}})"), ConfigError);             // missing type
  CHECK_THROWS_AS(load(R"({"model": {"type": "frobnicate", "m": 2}})"), ConfigError);
  CHECK_THROWS_AS(load(R"({"model": {"type": "multiplicative", "m": 2}})"), ConfigError);
  CHECK_THROWS_AS(load(R"({"model": {"type": "multiplicative", "m": 2, "phi": 0}})"),
                  ConfigError);                                             // phi > 0 required
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 2, "p": [0, "x/y", 1]}})"),
                  ConfigError);
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 2, "p": [0, 2, 1]}})"),
                  ConfigError);                                             // p out of [0,1]
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 2, "p": [0, 1]}})"),
                  ConfigError);                                             // wrong length
}

TEST_CASE("unknown keys are rejected at every level") {
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 1}, "bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 1, "bogus": 1}})"), ConfigError);
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 1},
      "run": {"bogus": 1}})"),
                  ConfigError);
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 1},
      "output": {"bogus": 1}})"),
                  ConfigError);
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 1},
      "scan": {"param": "phi", "from": 1, "to": 2, "step": 0.1, "bogus": 1}})"),
                  ConfigError);
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 1},
      "initial_graph": {"degrees": [1, 1], "types": ["red", "blue"], "bogus": 1}})"),
                  ConfigError);
}

TEST_CASE("run, output, and scan blocks parse") {
  const auto rc = load(R"({
    "model": {"type": "multiplicative", "m": 3, "p": [0, 0, "9/10", 1], "phi": "6/5"},
    "initial_graph": {"degrees": [3, 3], "types": ["red", "blue"]},
    "run": {"seed": 9, "steps": 500, "record_every": 100, "runs": 7, "threads": 2,
            "engine": "urn"},
    "output": {"dir": "/tmp/out", "format": "json"},
    "scan": {"param": "phi", "from": 1.0, "to": 1.6, "step": 0.01}
  })");
  CHECK(rc.seed == 9);
  CHECK(rc.steps == 500);
  CHECK(rc.record_every == 100);
  CHECK(rc.runs == 7);
  CHECK(rc.threads == 2);
  CHECK(rc.engine == Engine::Urn);
  CHECK(rc.out_dir == "/tmp/out");
  CHECK(rc.format == "json");
  REQUIRE(rc.scan.has_value());
  CHECK(rc.scan->param == ScanParam::Phi);
  CHECK(rc.scan->from == 1.0);
  CHECK(rc.scan->to == 1.6);
  CHECK(rc.scan->step == 0.01);

  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 1},
      "run": {"engine": "warp"}})"),
                  ConfigError);
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 1},
      "output": {"format": "xml"}})"),
                  ConfigError);
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 1},
      "scan": {"param": "phi", "from": 2, "to": 1, "step": 0.1}})"),
                  ConfigError);
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 1},
      "scan": {"param": "phi", "from": 1, "to": 2, "step": 0}})"),
                  ConfigError);
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 1},
      "scan": {"param": "warp", "from": 1, "to": 2, "step": 0.1}})"),
                  ConfigError);
}

TEST_CASE("explicit initial graphs are validated") {
  CHECK_THROWS_AS(load(R"({"model": {"type": "plain", "m": 2},
      "initial_graph": {"degrees": [1, 2], "types": ["red", "blue"]}})"),
                  ConfigError);  // thrown as InvalidInitialGraph, a ConfigError
  const auto rc = load(R"({"model": {"type": "plain", "m": 2},
      "initial_graph": {"degrees": [2, 2, 2], "types": ["red", "blue", "blue"]}})");
  CHECK(rc.g0.degree.size() == 3);
  CHECK(rc.g0.type[2] == Color::Blue);
}

TEST_CASE("flag overrides beat the file") {
  FlagOverrides flags;
  flags.seed = 777;
  flags.out_dir = "/tmp/elsewhere";
  flags.threads = 5;
  flags.format = "json";
  const auto rc = load_config(R"({
    "model": {"type": "plain", "m": 1},
    "run": {"seed": 1, "threads": 1},
    "output": {"dir": "/tmp/original", "format": "csv"}
  })",
                              flags);
  CHECK(rc.seed == 777);
  CHECK(rc.out_dir == "/tmp/elsewhere");
  CHECK(rc.threads == 5);
  CHECK(rc.format == "json");

  FlagOverrides bad;
  bad.format = "xml";
  CHECK_THROWS_AS(load_config(R"({"model": {"type": "plain", "m": 1}})", bad), ConfigError);
}

TEST_CASE("canonical echo is stable across formatting variants") {
  const auto a = load(R"({"model": {"type": "plain", "m": 2, "p": [0, 0.5, 1]}})");
  const auto b = load("{ \"model\" : {\n  \"m\": 2, \"p\": [\"0/1\", \"1/2\", \"1/1\"],"
                      "\n  \"type\": \"plain\" } }");
  CHECK(a.raw_json == b.raw_json);
  CHECK(a.raw_json.find("\"1/2\"") != std::string::npos);
  CHECK(a.raw_json.find("\"engine\":\"auto\"") != std::string::npos);
}

TEST_CASE("to_sim_config copies the run-relevant fields") {
  const auto rc = load(R"({
    "model": {"type": "multiplicative", "m": 2, "phi": 2},
    "run": {"seed": 3, "steps": 42, "record_every": 7, "engine": "graph"}
  })");
  const auto sc = to_sim_config(rc);
  CHECK(sc.seed == 3);
  CHECK(sc.steps == 42);
  CHECK(sc.record_every == 7);
  CHECK(sc.engine == Engine::Graph);
  CHECK(sc.ta.m == 2);
  CHECK(sc.g0.degree == rc.g0.degree);
}

TEST_CASE("fnv1a64 digests match reference vectors") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
  CHECK(fnv1a64_hex(std::string(1, '\0')) == "af63bd4c8601b7df");
}

TEST_CASE("config file loading") {
  CHECK_THROWS_AS(load_config_file("/nonexistent/path.json", {}), ConfigError);
}
