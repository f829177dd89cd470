#include "foa/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace foa {
namespace {

void require_keys(const nlohmann::json& obj, const std::set<std::string>& known,
                  const std::string& scope) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.count(key))
      throw ConfigError("unknown config key: " + (scope.empty() ? key : scope + "." + key));
  }
}

void parse_scheme(const nlohmann::json& j, ResamplingScheme& scheme) {
  require_keys(j, {"kind", "alpha", "beta"}, "scheme");
  bool beta_given = j.contains("beta");
  if (j.contains("kind")) {
    auto kind = scheme_kind_from_name(j["kind"].get<std::string>());
    if (!kind) throw ConfigError("unknown scheme kind: " + j["kind"].get<std::string>());
    scheme.kind = *kind;
    // Kind-specific default: identity weighting for the linear family,
    // unit temperature for exponential.
    if (!beta_given)
      scheme.beta = scheme.kind == SchemeKind::exponential ? 1.0 : 0.0;
  }
  if (j.contains("alpha")) scheme.alpha = j["alpha"].get<double>();
  if (beta_given) scheme.beta = j["beta"].get<double>();
  if (scheme.kind == SchemeKind::exponential && scheme.beta <= 0.0)
    throw ConfigError("exponential scheme requires beta > 0");
}

void parse_policy(const nlohmann::json& j, PolicySettings& policy) {
  require_keys(j, {"type", "temperature", "hint", "retries"}, "policy");
  if (j.contains("type")) policy.type = j["type"].get<std::string>();
  if (j.contains("temperature")) policy.temperature = j["temperature"].get<double>();
  if (j.contains("hint")) policy.hint = j["hint"].get<std::string>();
  if (j.contains("retries")) policy.retries = j["retries"].get<int>();
  if (policy.type != "enumerator" && policy.type != "softmax" && policy.type != "backend")
    throw ConfigError("unknown policy type: " + policy.type);
  if (policy.temperature <= 0.0) throw ConfigError("policy temperature must be > 0");
  if (policy.hint != "none" && policy.hint != "oracle")
    throw ConfigError("unknown policy hint: " + policy.hint);
  if (policy.retries < 0) throw ConfigError("policy retries must be >= 0");
}

void parse_labels(const nlohmann::json& j, LabelValueMap& labels) {
  require_keys(j, {"sure", "likely", "maybe", "impossible", "fallback"}, "value.labels");
  if (j.contains("sure")) labels.sure = j["sure"].get<double>();
  if (j.contains("likely")) labels.likely = j["likely"].get<double>();
  if (j.contains("maybe")) labels.maybe = j["maybe"].get<double>();
  if (j.contains("impossible")) labels.impossible = j["impossible"].get<double>();
  if (j.contains("fallback")) labels.fallback = j["fallback"].get<double>();
}

void parse_value(const nlohmann::json& j, ValueSettings& value) {
  require_keys(j, {"type", "samples", "aggregation", "labels"}, "value");
  if (j.contains("type")) value.type = j["type"].get<std::string>();
  if (j.contains("samples")) value.samples = j["samples"].get<int>();
  if (j.contains("aggregation")) value.aggregation = j["aggregation"].get<std::string>();
  if (j.contains("labels")) parse_labels(j["labels"], value.labels);
  if (value.type != "oracle" && value.type != "backend")
    throw ConfigError("unknown value type: " + value.type);
  if (value.samples < 1) throw ConfigError("value samples must be >= 1");
  if (value.aggregation != "mean" && value.aggregation != "sum")
    throw ConfigError("unknown value aggregation: " + value.aggregation);
}

void parse_backend(const nlohmann::json& j, BackendSettings& backend) {
  require_keys(j,
               {"type", "base_url", "path", "api_key_env", "fixture", "model", "max_tokens",
                "temperature", "top_p", "stop", "retries", "backoff_ms", "parallelism"},
               "backend");
  if (j.contains("type")) backend.type = j["type"].get<std::string>();
  if (j.contains("base_url")) backend.base_url = j["base_url"].get<std::string>();
  if (j.contains("path")) backend.path = j["path"].get<std::string>();
  if (j.contains("api_key_env")) backend.api_key_env = j["api_key_env"].get<std::string>();
  if (j.contains("fixture")) backend.fixture_path = j["fixture"].get<std::string>();
  if (j.contains("model")) backend.model = j["model"].get<std::string>();
  if (j.contains("max_tokens")) backend.max_tokens = j["max_tokens"].get<int>();
  if (j.contains("temperature")) backend.temperature = j["temperature"].get<double>();
  if (j.contains("top_p")) backend.top_p = j["top_p"].get<double>();
  if (j.contains("stop")) {
    if (j["stop"].is_null())
      backend.stop.reset();
    else
      backend.stop = j["stop"].get<std::string>();
  }
  if (j.contains("retries")) backend.retries = j["retries"].get<int>();
  if (j.contains("backoff_ms")) backend.backoff_ms = j["backoff_ms"].get<int>();
  if (j.contains("parallelism")) backend.parallelism = j["parallelism"].get<int>();
  if (backend.type != "none" && backend.type != "http" && backend.type != "fixture")
    throw ConfigError("unknown backend type: " + backend.type);
  if (backend.parallelism < 1) throw ConfigError("backend parallelism must be >= 1");
}

void parse_tree(const nlohmann::json& j, TreeSettings& tree) {
  require_keys(j, {"branching", "depth", "noise_sigma"}, "tree");
  if (j.contains("branching")) tree.branching = j["branching"].get<int>();
  if (j.contains("depth")) tree.depth = j["depth"].get<int>();
  if (j.contains("noise_sigma")) tree.noise_sigma = j["noise_sigma"].get<double>();
  if (tree.branching < 2) throw ConfigError("tree branching must be >= 2");
  if (tree.depth < 1) throw ConfigError("tree depth must be >= 1");
  if (tree.noise_sigma < 0) throw ConfigError("tree noise_sigma must be >= 0");
}

}  // namespace

Config config_profile(const std::string& task) {
  Config config;
  if (task == "game24") {
    // Tuned settings: 9 agents, 9 steps, resample every step, gamma 0.5,
    // linear-filtered weighting.
    config.task = "game24";
    config.n_agents = 9;
    config.max_steps = 9;
    config.resample_every_k = 1;
    config.gamma = 0.5;
    config.scheme = {SchemeKind::linear_filtered, 1.0, 0.0};
    config.backtrack_known_values_only = false;
    config.policy = {"softmax", 1.0, "none", 2};
    config.value = {};
    config.backend.max_tokens = 100;
  } else if (task == "crosswords") {
    // Tuned settings: 2 agents, 6 steps, resample every 3 steps, gamma
    // 0.5, linear weighting.
    config.task = "crosswords";
    config.n_agents = 2;
    config.max_steps = 6;
    config.resample_every_k = 3;
    config.gamma = 0.5;
    config.scheme = {SchemeKind::linear, 1.0, 0.0};
    config.backtrack_known_values_only = true;
    config.policy = {"backend", 1.0, "none", 2};
    config.value.type = "backend";
    config.value.samples = 1;
    config.backend.max_tokens = 1000;
  } else if (task == "synthetic_tree") {
    config.task = "synthetic_tree";
    config.n_agents = 4;
    config.max_steps = 8;
    config.resample_every_k = 1;
    config.gamma = 0.5;
    config.scheme = {SchemeKind::greedy, 1.0, 0.0};
    config.backtrack_known_values_only = false;
    config.policy = {"softmax", 1.0, "oracle", 2};
    config.value = {};
  } else {
    throw ConfigError("unknown task profile: " + task);
  }
  return config;
}

Config config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  std::string task = "game24";
  if (doc.contains("task")) task = doc["task"].get<std::string>();
  if (doc.contains("profile")) task = doc["profile"].get<std::string>();
  Config config = config_profile(task);

  require_keys(doc,
               {"task", "profile", "n_agents", "max_steps", "resample_every_k", "gamma", "scheme",
                "seed", "budget_usd", "backtrack_known_values_only", "cache", "batching", "policy",
                "value", "backend", "prices", "tree"},
               "");

  if (doc.contains("n_agents")) config.n_agents = doc["n_agents"].get<int>();
  if (doc.contains("max_steps")) config.max_steps = doc["max_steps"].get<int>();
  if (doc.contains("resample_every_k"))
    config.resample_every_k = doc["resample_every_k"].get<int>();
  if (doc.contains("gamma")) config.gamma = doc["gamma"].get<double>();
  if (doc.contains("scheme")) parse_scheme(doc["scheme"], config.scheme);
  if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("budget_usd")) {
    if (doc["budget_usd"].is_null())
      config.budget_usd.reset();
    else
      config.budget_usd = doc["budget_usd"].get<double>();
  }
  if (doc.contains("backtrack_known_values_only"))
    config.backtrack_known_values_only = doc["backtrack_known_values_only"].get<bool>();
  if (doc.contains("cache")) config.cache_enabled = doc["cache"].get<bool>();
  if (doc.contains("batching")) config.batching_enabled = doc["batching"].get<bool>();
  if (doc.contains("policy")) parse_policy(doc["policy"], config.policy);
  if (doc.contains("value")) parse_value(doc["value"], config.value);
  if (doc.contains("backend")) parse_backend(doc["backend"], config.backend);
  if (doc.contains("tree")) parse_tree(doc["tree"], config.tree);
  if (doc.contains("prices")) {
    for (const auto& [model, entry] : doc["prices"].items()) {
      require_keys(entry, {"prompt", "completion"}, "prices." + model);
      ModelPrice price;
      price.usd_per_1m_prompt = entry.at("prompt").get<double>();
      price.usd_per_1m_completion = entry.at("completion").get<double>();
      if (price.usd_per_1m_prompt < 0 || price.usd_per_1m_completion < 0)
        throw ConfigError("negative price for model " + model);
      config.prices[model] = price;
    }
  }

  if (config.n_agents < 1) throw ConfigError("n_agents must be >= 1");
  if (config.max_steps < 0) throw ConfigError("max_steps must be >= 0");
  if (config.resample_every_k < 0) throw ConfigError("resample_every_k must be >= 0");
  if (config.gamma < 0.0 || config.gamma > 1.0) throw ConfigError("gamma must lie in [0, 1]");
  if (config.budget_usd && *config.budget_usd < 0)
    throw ConfigError("budget_usd must be >= 0");
  return config;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed config file " + path + ": " + e.what());
  }
  return config_from_json(doc);
}

nlohmann::json config_to_json(const Config& config) {
  nlohmann::json j;
  j["task"] = config.task;
  j["n_agents"] = config.n_agents;
  j["max_steps"] = config.max_steps;
  j["resample_every_k"] = config.resample_every_k;
  j["gamma"] = config.gamma;
  j["scheme"] = {{"kind", scheme_kind_name(config.scheme.kind)},
                 {"alpha", config.scheme.alpha},
                 {"beta", config.scheme.beta}};
  j["seed"] = config.seed;
  j["budget_usd"] = config.budget_usd ? nlohmann::json(*config.budget_usd) : nlohmann::json();
  j["backtrack_known_values_only"] = config.backtrack_known_values_only;
  j["cache"] = config.cache_enabled;
  j["batching"] = config.batching_enabled;
  j["policy"] = {{"type", config.policy.type},
                 {"temperature", config.policy.temperature},
                 {"hint", config.policy.hint},
                 {"retries", config.policy.retries}};
  j["value"] = {{"type", config.value.type},
                {"samples", config.value.samples},
                {"aggregation", config.value.aggregation},
                {"labels",
                 {{"sure", config.value.labels.sure},
                  {"likely", config.value.labels.likely},
                  {"maybe", config.value.labels.maybe},
                  {"impossible", config.value.labels.impossible},
                  {"fallback", config.value.labels.fallback}}}};
  j["backend"] = {{"type", config.backend.type},
                  {"base_url", config.backend.base_url},
                  {"path", config.backend.path},
                  {"api_key_env", config.backend.api_key_env},
                  {"fixture", config.backend.fixture_path},
                  {"model", config.backend.model},
                  {"max_tokens", config.backend.max_tokens},
                  {"temperature", config.backend.temperature},
                  {"top_p", config.backend.top_p},
                  {"stop", config.backend.stop ? nlohmann::json(*config.backend.stop)
                                               : nlohmann::json()},
                  {"retries", config.backend.retries},
                  {"backoff_ms", config.backend.backoff_ms},
                  {"parallelism", config.backend.parallelism}};
  nlohmann::json prices;
  for (const auto& [model, price] : config.prices)
    prices[model] = {{"prompt", price.usd_per_1m_prompt},
                     {"completion", price.usd_per_1m_completion}};
  j["prices"] = std::move(prices);
  j["tree"] = {{"branching", config.tree.branching},
               {"depth", config.tree.depth},
               {"noise_sigma", config.tree.noise_sigma}};
  return j;
}

void apply_override(Config& config, const std::string& dotted_key, const std::string& value) {
  nlohmann::json doc = config_to_json(config);
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(value);
  } catch (const nlohmann::json::exception&) {
    parsed = value;  // plain string
  }

  nlohmann::json* node = &doc;
  std::string rest = dotted_key;
  for (;;) {
    auto dot = rest.find('.');
    std::string head = rest.substr(0, dot);
    if (dot == std::string::npos) {
      (*node)[head] = parsed;
      break;
    }
    if (!node->contains(head)) (*node)[head] = nlohmann::json::object();
    node = &(*node)[head];
    rest = rest.substr(dot + 1);
  }
  config = config_from_json(doc);
}

const std::vector<std::string>& known_ablation_flags() {
  static const std::vector<std::string> flags = {"no_selection", "max_resampling", "gamma_zero",
                                                 "gamma_one",    "no_cache",       "no_batching"};
  return flags;
}

Config apply_ablations(const Config& config, const std::vector<std::string>& flags) {
  Config out = config;
  bool gamma_zero = false;
  bool gamma_one = false;
  for (const auto& flag : flags) {
    if (flag == "no_selection") {
      out.resample_every_k = 0;
    } else if (flag == "max_resampling") {
      out.scheme.kind = SchemeKind::greedy;
    } else if (flag == "gamma_zero") {
      out.gamma = 0.0;
      gamma_zero = true;
    } else if (flag == "gamma_one") {
      out.gamma = 1.0;
      gamma_one = true;
    } else if (flag == "no_cache") {
      out.cache_enabled = false;
    } else if (flag == "no_batching") {
      out.batching_enabled = false;
    } else {
      throw ConfigError("unknown ablation flag: " + flag);
    }
  }
  if (gamma_zero && gamma_one)
    throw ConfigError("conflicting ablation flags: gamma_zero and gamma_one");
  return out;
}

}  // namespace foa
