#include "doctest.h"

#include <fstream>

#include "foa/config.hpp"

using namespace foa;

TEST_CASE("the game24 profile carries the tuned defaults") {
  auto config = config_profile("game24");
  CHECK(config.n_agents == 9);
  CHECK(config.max_steps == 9);
  CHECK(config.resample_every_k == 1);
  CHECK(config.gamma == 0.5);
  CHECK(config.scheme.kind == SchemeKind::linear_filtered);
  CHECK(config.backend.max_tokens == 100);
  CHECK(config.backend.temperature == 0.7);
  CHECK(config.backend.top_p == 1.0);
  CHECK_FALSE(config.backend.stop.has_value());
}

TEST_CASE("the crosswords profile carries the tuned defaults") {
  auto config = config_profile("crosswords");
  CHECK(config.n_agents == 2);
  CHECK(config.max_steps == 6);
  CHECK(config.resample_every_k == 3);
  CHECK(config.gamma == 0.5);
  CHECK(config.scheme.kind == SchemeKind::linear);
  CHECK(config.backend.max_tokens == 1000);
}

TEST_CASE("constraint violations are descriptive failures") {
  CHECK_THROWS_AS(config_from_json({{"task", "game24"}, {"gamma", 1.5}}), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"task", "game24"}, {"gamma", -0.1}}), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"task", "game24"}, {"n_agents", 0}}), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"task", "game24"}, {"resample_every_k", -1}}), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"task", "nonsense"}}), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"task", "game24"}, {"budget_usd", -3.0}}), ConfigError);
}

TEST_CASE("unknown keys are rejected, known overrides land") {
  CHECK_THROWS_AS(config_from_json({{"task", "game24"}, {"n_agentz", 5}}), ConfigError);
  CHECK_THROWS_AS(config_from_json({{"task", "game24"},
                                    {"scheme", {{"kindd", "linear"}}}}),
                  ConfigError);
  auto config = config_from_json({{"task", "game24"},
                                  {"n_agents", 3},
                                  {"scheme", {{"kind", "exponential"}, {"beta", 2.0}}}});
  CHECK(config.n_agents == 3);
  CHECK(config.scheme.kind == SchemeKind::exponential);
  CHECK(config.scheme.beta == 2.0);
}

TEST_CASE("exponential beta defaults to one and must be positive") {
  auto config = config_from_json({{"task", "game24"}, {"scheme", {{"kind", "exponential"}}}});
  CHECK(config.scheme.beta == 1.0);
  CHECK_THROWS_AS(config_from_json({{"task", "game24"},
                                    {"scheme", {{"kind", "exponential"}, {"beta", 0.0}}}}),
                  ConfigError);
}

TEST_CASE("config files round-trip through JSON") {
  auto config = config_profile("crosswords");
  config.seed = 777;
  config.budget_usd = 1.25;
  auto doc = config_to_json(config);
  auto reparsed = config_from_json(doc);
  CHECK(config_to_json(reparsed) == doc);
}

TEST_CASE("load_config_file reports missing and malformed files") {
  CHECK_THROWS_AS(load_config_file("/nonexistent/foa.json"), ConfigError);
  std::ofstream bad("/tmp/foa_bad.json");
  bad << "{ not json";
  bad.close();
  CHECK_THROWS_AS(load_config_file("/tmp/foa_bad.json"), ConfigError);
  std::ofstream good("/tmp/foa_good.json");
  good << R"({"task": "game24", "seed": 5, "policy": {"type": "enumerator"}})";
  good.close();
  auto config = load_config_file("/tmp/foa_good.json");
  CHECK(config.seed == 5);
  CHECK(config.policy.type == "enumerator");
}

TEST_CASE("dotted overrides parse values as JSON with string fallback") {
  auto config = config_profile("game24");
  apply_override(config, "scheme.kind", "greedy");
  CHECK(config.scheme.kind == SchemeKind::greedy);
  apply_override(config, "gamma", "0.25");
  CHECK(config.gamma == 0.25);
  apply_override(config, "policy.hint", "oracle");
  CHECK(config.policy.hint == "oracle");
  apply_override(config, "cache", "false");
  CHECK_FALSE(config.cache_enabled);
  CHECK_THROWS_AS(apply_override(config, "gamma", "7"), ConfigError);
  CHECK_THROWS_AS(apply_override(config, "no.such.key", "1"), ConfigError);
}

TEST_CASE("each ablation flag flips exactly its mechanism") {
  auto base = config_profile("game24");

  auto no_selection = apply_ablations(base, {"no_selection"});
  CHECK(no_selection.resample_every_k == 0);
  CHECK(no_selection.gamma == base.gamma);

  auto max_resampling = apply_ablations(base, {"max_resampling"});
  CHECK(max_resampling.scheme.kind == SchemeKind::greedy);
  CHECK(max_resampling.resample_every_k == base.resample_every_k);

  CHECK(apply_ablations(base, {"gamma_zero"}).gamma == 0.0);
  CHECK(apply_ablations(base, {"gamma_one"}).gamma == 1.0);
  CHECK_FALSE(apply_ablations(base, {"no_cache"}).cache_enabled);
  CHECK_FALSE(apply_ablations(base, {"no_batching"}).batching_enabled);
}

TEST_CASE("conflicting and unknown ablation flags are rejected") {
  auto base = config_profile("game24");
  CHECK_THROWS_AS(apply_ablations(base, {"gamma_zero", "gamma_one"}), ConfigError);
  CHECK_THROWS_AS(apply_ablations(base, {"warp_drive"}), ConfigError);
  CHECK(known_ablation_flags().size() == 6);
}
