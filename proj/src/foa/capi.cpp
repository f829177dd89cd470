#include "foa/foa.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "foa/backend.hpp"
#include "foa/config.hpp"
#include "foa/harness.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

foa_status fail(foa_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps C++ exceptions onto status codes at the API boundary.
template <typename Fn>
foa_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const foa::ConfigError& e) {
    return fail(FOA_ERR_CONFIG, e.what());
  } catch (const foa::BackendError& e) {
    return fail(FOA_ERR_BACKEND, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(FOA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(FOA_ERR_RUNTIME, e.what());
  }
}

std::vector<std::string> split_csv(const char* csv) {
  std::vector<std::string> parts;
  if (!csv) return parts;
  std::string text(csv);
  std::size_t begin = 0;
  while (begin <= text.size()) {
    auto comma = text.find(',', begin);
    std::string part = text.substr(begin, comma == std::string::npos ? std::string::npos
                                                                     : comma - begin);
    if (!part.empty()) parts.push_back(part);
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return parts;
}

nlohmann::json run_result_json(const foa::RunResult& result, const std::string& trace_path) {
  nlohmann::json j;
  j["solved"] = result.solved;
  j["metric"] = result.metric;
  j["steps_taken"] = result.steps_taken;
  j["stop_reason"] = result.stop_reason;
  j["total_usd"] = result.total_usd;
  j["value_evaluations"] = result.value_evaluations;
  j["cache_hits"] = result.cache_hits;
  j["cache_misses"] = result.cache_misses;
  j["distinct_states_evaluated"] = result.distinct_states_evaluated;
  j["trace_hash"] = result.trace_hash;
  if (result.solution) j["solution"] = *result.solution;
  if (!trace_path.empty()) j["trace_path"] = trace_path;
  return j;
}

}  // namespace

struct foa_config {
  foa::Config config;
};

extern "C" {

const char* foa_version(void) { return "0.1.0"; }

const char* foa_last_error(void) { return g_last_error.c_str(); }

void foa_string_free(char* s) { std::free(s); }

foa_status foa_config_load(const char* path, foa_config** out) {
  if (!path || !out) return fail(FOA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto config = foa::load_config_file(path);
    *out = new foa_config{std::move(config)};
    return FOA_OK;
  });
}

foa_status foa_config_from_json(const char* json_text, foa_config** out) {
  if (!json_text || !out) return fail(FOA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
      throw foa::ConfigError(std::string("malformed config JSON: ") + e.what());
    }
    *out = new foa_config{foa::config_from_json(doc)};
    return FOA_OK;
  });
}

foa_status foa_config_override(foa_config* config, const char* dotted_key, const char* value) {
  if (!config || !dotted_key || !value) return fail(FOA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    foa::apply_override(config->config, dotted_key, value);
    return FOA_OK;
  });
}

foa_status foa_config_apply_ablations(foa_config* config, const char* flags_csv) {
  if (!config) return fail(FOA_ERR_INVALID_ARGUMENT, "null config");
  return guarded([&] {
    config->config = foa::apply_ablations(config->config, split_csv(flags_csv));
    return FOA_OK;
  });
}

foa_status foa_config_to_json(const foa_config* config, char** json_out) {
  if (!config || !json_out) return fail(FOA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *json_out = dup_string(foa::config_to_json(config->config).dump(2));
    return FOA_OK;
  });
}

void foa_config_free(foa_config* config) { delete config; }

foa_status foa_run(const foa_config* config, const char* puzzle, const char* puzzle_file,
                   int puzzle_index, const char* trace_path, char** result_json_out) {
  if (!config || !result_json_out) return fail(FOA_ERR_INVALID_ARGUMENT, "null argument");
  if (!puzzle && !puzzle_file)
    return fail(FOA_ERR_INVALID_ARGUMENT, "need a puzzle spec or a puzzle file");
  return guarded([&] {
    foa::TaskInstance instance;
    if (puzzle) {
      instance.spec = puzzle;
      instance.id = puzzle;
      if (config->config.task == "crosswords")
        throw foa::ConfigError("crosswords instances must come from a puzzle file");
    } else {
      auto instances = foa::load_instances(config->config.task, puzzle_file);
      if (puzzle_index < 0 || puzzle_index >= static_cast<int>(instances.size()))
        throw foa::ConfigError("puzzle index out of range: " + std::to_string(puzzle_index));
      instance = instances[puzzle_index];
    }

    std::string trace_file = trace_path ? trace_path : "";
    foa::RunResult result;
    if (!trace_file.empty()) {
      std::ofstream sink(trace_file, std::ios::binary);
      if (!sink) throw foa::ConfigError("cannot open trace file: " + trace_file);
      result = foa::execute_run(config->config, instance, &sink);
    } else {
      result = foa::execute_run(config->config, instance, nullptr);
    }
    *result_json_out = dup_string(run_result_json(result, trace_file).dump(2));
    return FOA_OK;
  });
}

foa_status foa_experiment(const foa_config* config, const char* puzzle_file, int repetitions,
                          const char* out_dir, int jobs, char** summary_json_out) {
  if (!config || !puzzle_file || !out_dir || !summary_json_out)
    return fail(FOA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto instances = foa::load_instances(config->config.task, puzzle_file);
    auto summary = foa::run_experiment(config->config, instances, repetitions, out_dir,
                                       jobs < 1 ? 1 : jobs);
    *summary_json_out = dup_string(summary.to_json().dump(2));
    return FOA_OK;
  });
}

foa_status foa_ablate(const foa_config* config, const char* puzzle_file, int repetitions,
                      const char* flags_csv, const char* out_dir, int jobs,
                      char** report_json_out) {
  if (!config || !puzzle_file || !out_dir || !report_json_out)
    return fail(FOA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto instances = foa::load_instances(config->config.task, puzzle_file);
    std::vector<std::string> flags = split_csv(flags_csv);
    if (flags.empty()) flags = foa::known_ablation_flags();

    nlohmann::json report;
    auto baseline = foa::run_experiment(config->config, instances, repetitions,
                                        (std::filesystem::path(out_dir) / "baseline").string(),
                                        jobs < 1 ? 1 : jobs);
    report["baseline"] = baseline.to_json();
    for (const auto& flag : flags) {
      auto ablated = foa::apply_ablations(config->config, {flag});
      auto summary = foa::run_experiment(ablated, instances, repetitions,
                                         (std::filesystem::path(out_dir) / flag).string(),
                                         jobs < 1 ? 1 : jobs);
      report[flag] = summary.to_json();
    }
    *report_json_out = dup_string(report.dump(2));
    return FOA_OK;
  });
}

foa_status foa_replay(const char* trace_path, int* match_out, char** report_json_out) {
  if (!trace_path || !match_out) return fail(FOA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto report = foa::replay_trace(trace_path);
    *match_out = report.match ? 1 : 0;
    if (report_json_out) {
      nlohmann::json j;
      j["match"] = report.match;
      j["original_hash"] = report.original_hash;
      j["replayed_hash"] = report.replayed_hash;
      *report_json_out = dup_string(j.dump(2));
    }
    return FOA_OK;
  });
}

foa_status foa_report_csv(const char* summary_path, char** csv_out) {
  if (!summary_path || !csv_out) return fail(FOA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *csv_out = dup_string(foa::report_csv(summary_path));
    return FOA_OK;
  });
}

}  // extern "C"
