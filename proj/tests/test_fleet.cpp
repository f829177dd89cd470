#include "doctest.h"

#include <fstream>
#include <sstream>

#include "foa/config.hpp"
#include "foa/prompts.hpp"
#include "foa/game24.hpp"
#include "foa/harness.hpp"
#include "foa/run.hpp"
#include "test_support.hpp"

using namespace foa;
using testsupport::make_state;

TEST_CASE("initialize_fleet replicates the initial state") {
  Game24Env env("4 4 6 8");
  auto fleet = initialize_fleet(3, env.initial_state());
  CHECK(fleet.t == 0);
  REQUIRE(fleet.n() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(fleet.agents[i].agent_index == i);
    CHECK(fleet.agents[i].payload->key() == fleet.agents[0].payload->key());
    CHECK(fleet.agents[i].born_at == 0);
  }
}

TEST_CASE("single-agent fleets are allowed; empty ones are not") {
  Game24Env env("4 4 6 8");
  CHECK(initialize_fleet(1, env.initial_state()).n() == 1);
  CHECK(initialize_fleet(9, env.initial_state()).n() == 9);
  CHECK_THROWS(initialize_fleet(0, env.initial_state()));
  CHECK_THROWS(initialize_fleet(-2, env.initial_state()));
}

TEST_CASE("check_solution returns the lowest agent index") {
  Game24Env env("4 4 6 8");
  auto solved = make_state({4, 4, 6, 8}, {"4 + 8 = 12 (left: 4 6 12)",
                                          "6 - 4 = 2 (left: 2 12)",
                                          "2 * 12 = 24 (left: 24)"});
  auto plain = make_state({4, 4, 6, 8});
  FleetState fleet;
  fleet.t = 3;
  std::vector<State> payloads = {plain, plain, solved, plain, plain, solved};
  for (std::size_t i = 0; i < payloads.size(); ++i)
    fleet.agents.push_back(AgentState{payloads[i], static_cast<int>(i), 0});

  auto found = check_solution(fleet, env);
  REQUIRE(found.has_value());
  CHECK(found->agent_index == 2);

  FleetState unsolved;
  unsolved.agents.push_back(AgentState{plain, 0, 0});
  CHECK_FALSE(check_solution(unsolved, env).has_value());
}

namespace {

Config oracle_game24_config(std::uint64_t seed) {
  Config config = config_profile("game24");
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("an oracle-guided fleet solves a solvable puzzle") {
  Config config = oracle_game24_config(1);
  TaskInstance instance{"4 4 6 8", "4 4 6 8", std::nullopt};
  auto result = execute_run(config, instance, nullptr);
  CHECK(result.solved);
  CHECK(result.stop_reason == "solved");
  REQUIRE(result.solution.has_value());
  auto value = testsupport::ExprParser(
                   result.solution->substr(0, result.solution->find(" = 24")))
                   .parse();
  REQUIRE(value.has_value());
  CHECK(value->eq(testsupport::Frac{24, 1}));
}

TEST_CASE("max_steps zero is an empty run") {
  Config config = oracle_game24_config(1);
  config.max_steps = 0;
  TaskInstance instance{"4 4 6 8", "4 4 6 8", std::nullopt};
  auto result = execute_run(config, instance, nullptr);
  CHECK_FALSE(result.solved);
  CHECK(result.steps_taken == 0);
  CHECK(result.stop_reason == "max_steps");
}

TEST_CASE("k=0 disables selection entirely") {
  Config config = oracle_game24_config(3);
  config.resample_every_k = 0;
  std::ostringstream sink;
  TaskInstance instance{"1 1 1 1", "1 1 1 1", std::nullopt};  // unsolvable: full run
  {
    std::ofstream file("/tmp/foa_k0.jsonl", std::ios::binary);
    auto result = execute_run(config, instance, &file);
    CHECK_FALSE(result.solved);
  }
  std::ifstream in("/tmp/foa_k0.jsonl");
  std::string line;
  int selects = 0, steps = 0;
  while (std::getline(in, line)) {
    auto event = nlohmann::json::parse(line);
    if (event["kind"] == "select" || event["kind"] == "resample_draw") ++selects;
    if (event["kind"] == "step") ++steps;
  }
  CHECK(selects == 0);
  CHECK(steps > 0);
}

TEST_CASE("fleet size is conserved through every phase") {
  Config config = oracle_game24_config(5);
  std::ofstream file("/tmp/foa_conserve.jsonl", std::ios::binary);
  TaskInstance instance{"1 2 7 7", "1 2 7 7", std::nullopt};
  execute_run(config, instance, &file);
  file.close();
  std::ifstream in("/tmp/foa_conserve.jsonl");
  std::string line;
  while (std::getline(in, line)) {
    auto event = nlohmann::json::parse(line);
    if (event["kind"] == "resample_draw")
      CHECK(event["payload"]["indices"].size() == 9);
  }
}

TEST_CASE("equal seeds give byte-identical traces, different seeds differ") {
  Config config = oracle_game24_config(11);
  TaskInstance instance{"3 3 8 8", "3 3 8 8", std::nullopt};
  std::ostringstream a, b;
  auto ra = execute_run(config, instance, &a);
  auto rb = execute_run(config, instance, &b);
  CHECK(a.str() == b.str());
  CHECK(ra.trace_hash == rb.trace_hash);

  config.seed = 12;
  std::ostringstream c;
  auto rc = execute_run(config, instance, &c);
  CHECK(a.str() != c.str());
}

TEST_CASE("no mutation or selection events follow the solving step") {
  Config config = oracle_game24_config(2);
  std::ofstream file("/tmp/foa_early.jsonl", std::ios::binary);
  TaskInstance instance{"4 4 6 8", "4 4 6 8", std::nullopt};
  auto result = execute_run(config, instance, &file);
  file.close();
  REQUIRE(result.solved);
  std::ifstream in("/tmp/foa_early.jsonl");
  std::string line;
  bool seen_solution = false;
  while (std::getline(in, line)) {
    auto event = nlohmann::json::parse(line);
    if (event["kind"] == "solution_check" && event["payload"]["found"] == true)
      seen_solution = true;
    if (seen_solution) {
      CHECK(event["kind"] != "step");
      CHECK(event["kind"] != "select");
      CHECK(event["kind"] != "resample_draw");
      CHECK(event["kind"] != "prune");
    }
  }
  CHECK(seen_solution);
}

TEST_CASE("cost totals are non-decreasing along the trace") {
  // backend-driven run so budget events appear
  Config config = config_profile("game24");
  config.seed = 8;
  config.policy.type = "backend";
  config.value.type = "backend";
  config.value.samples = 1;
  config.backend.type = "fixture";

  testsupport::SimulatedGame24Backend simulated;
  auto recorder = std::make_shared<RecordingClient>(
      std::shared_ptr<CompletionClient>(&simulated, [](CompletionClient*) {}));
  // record a run by wiring the simulated client through a manual stack
  {
    TaskInstance instance{"2 8 8 14", "2 8 8 14", std::nullopt};
    Game24Env env("2 8 8 14");
    CostLedger ledger(config.prices);
    RunBudget budget;
    TraceWriter trace(nullptr);
    BackendRequest base;
    base.model = config.backend.model;
    BatchExecutor executor(*recorder, base, ledger, budget, &trace, true);
    BackendPolicy policy(executor, kGame24StepPrompt, 2);
    Backend24Value value_fn(executor, config.value.labels, 1, ValueAggregation::mean);
    ValueService values(value_fn, true);
    StateHistory history;
    RunSettings settings{config.n_agents, config.max_steps, 1, 0.5, config.scheme, 8,
                         std::nullopt, false};
    run_fleet(settings, env, policy, values, ledger, budget, history, trace, {});
  }
  recorder->save("/tmp/foa_fixture.json");
  config.backend.fixture_path = "/tmp/foa_fixture.json";

  std::ofstream file("/tmp/foa_cost.jsonl", std::ios::binary);
  TaskInstance instance{"2 8 8 14", "2 8 8 14", std::nullopt};
  auto result = execute_run(config, instance, &file);
  file.close();

  std::ifstream in("/tmp/foa_cost.jsonl");
  std::string line;
  double last_usd = 0.0;
  int budget_events = 0;
  while (std::getline(in, line)) {
    auto event = nlohmann::json::parse(line);
    if (event["kind"] != "budget") continue;
    ++budget_events;
    double now = event["payload"]["total_usd"].get<double>();
    CHECK(now >= last_usd);
    last_usd = now;
  }
  CHECK(budget_events > 0);
  CHECK(result.total_usd == doctest::Approx(last_usd));
  CHECK(result.total_usd > 0.0);
}

TEST_CASE("a tiny budget terminates the run with the budget marker") {
  Config config = config_profile("game24");
  config.seed = 8;
  config.policy.type = "backend";
  config.value.type = "backend";
  config.value.samples = 1;
  config.backend.type = "fixture";
  config.backend.fixture_path = "/tmp/foa_fixture.json";  // recorded above
  config.budget_usd = 1e-9;

  std::ofstream file("/tmp/foa_budget.jsonl", std::ios::binary);
  TaskInstance instance{"2 8 8 14", "2 8 8 14", std::nullopt};
  auto result = execute_run(config, instance, &file);
  file.close();
  CHECK_FALSE(result.solved);
  CHECK(result.stop_reason == "budget");

  std::ifstream in("/tmp/foa_budget.jsonl");
  std::string line;
  bool exhausted_marker = false;
  while (std::getline(in, line)) {
    auto event = nlohmann::json::parse(line);
    if (event["kind"] == "budget" && event["payload"]["exhausted"] == true)
      exhausted_marker = true;
  }
  CHECK(exhausted_marker);
}

TEST_CASE("fixture-backed runs replay byte-identically") {
  Config config = config_profile("game24");
  config.seed = 8;
  config.policy.type = "backend";
  config.value.type = "backend";
  config.value.samples = 1;
  config.backend.type = "fixture";
  config.backend.fixture_path = "/tmp/foa_fixture.json";

  TaskInstance instance{"2 8 8 14", "2 8 8 14", std::nullopt};
  std::ostringstream a, b;
  auto ra = execute_run(config, instance, &a);
  auto rb = execute_run(config, instance, &b);
  CHECK(a.str() == b.str());
  CHECK(ra.trace_hash == rb.trace_hash);
}
