#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "foa/cost.hpp"
#include "foa/selection.hpp"
#include "foa/value.hpp"

namespace foa {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BackendSettings {
  std::string type = "none";  // none | http | fixture
  std::string base_url = "http://localhost:8000";
  std::string path = "/v1/completions";
  std::string api_key_env = "FOA_API_KEY";
  std::string fixture_path;
  std::string model = "gpt-3.5-turbo-0125";
  int max_tokens = 100;
  double temperature = 0.7;
  double top_p = 1.0;
  std::optional<std::string> stop;
  int retries = 3;
  int backoff_ms = 0;
  int parallelism = 1;
};

struct PolicySettings {
  std::string type = "softmax";  // enumerator | softmax | backend
  double temperature = 1.0;
  std::string hint = "none";  // none | oracle
  int retries = 2;            // per-step retry budget for illegal outputs
};

struct ValueSettings {
  std::string type = "oracle";  // oracle | backend
  int samples = 3;
  std::string aggregation = "mean";  // mean | sum
  LabelValueMap labels;
};

struct TreeSettings {
  int branching = 3;
  int depth = 4;
  double noise_sigma = 0.0;
};

// Fully resolved run configuration: a task profile with overrides applied.
struct Config {
  std::string task = "game24";  // game24 | crosswords | synthetic_tree
  int n_agents = 9;
  int max_steps = 9;
  int resample_every_k = 1;
  double gamma = 0.5;
  ResamplingScheme scheme{SchemeKind::linear_filtered, 1.0, 0.0};
  std::uint64_t seed = 42;
  std::optional<double> budget_usd;
  bool backtrack_known_values_only = false;
  bool cache_enabled = true;
  bool batching_enabled = true;
  PolicySettings policy;
  ValueSettings value;
  BackendSettings backend;
  PriceTable prices = default_price_table();
  TreeSettings tree;
};

// Built-in defaults for a task, matching the tuned per-task settings.
Config config_profile(const std::string& task);

// Strict parse: the optional "task"/"profile" key selects the base
// profile, every other key overrides it; unknown keys are rejected and
// constraint violations throw ConfigError.
Config config_from_json(const nlohmann::json& doc);
Config load_config_file(const std::string& path);

nlohmann::json config_to_json(const Config& config);

// Sets one field by dotted path, e.g. "scheme.kind=greedy" or
// "policy.temperature=0.5". The value is parsed as JSON when possible and
// as a string otherwise.
void apply_override(Config& config, const std::string& dotted_key, const std::string& value);

// The ablation switches: no_selection, max_resampling, gamma_zero,
// gamma_one, no_cache, no_batching. Conflicting flags are rejected.
Config apply_ablations(const Config& config, const std::vector<std::string>& flags);

const std::vector<std::string>& known_ablation_flags();

}  // namespace foa
