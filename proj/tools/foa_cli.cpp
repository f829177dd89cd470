// Command-line front end for the fleet runtime, built entirely on the C
// API. Verbs: run, experiment, ablate, replay, report.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "foa/foa.h"

namespace {

struct ConfigHandle {
  foa_config* ptr = nullptr;
  ~ConfigHandle() { foa_config_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { foa_string_free(ptr); }
};

int die(foa_status status, const char* verb) {
  std::cerr << verb << " failed (" << status << "): " << foa_last_error() << "\n";
  return 1;
}

foa_status build_config(const std::string& config_path, const std::string& task,
                        const std::vector<std::string>& overrides, ConfigHandle& handle) {
  foa_status status;
  if (!config_path.empty()) {
    status = foa_config_load(config_path.c_str(), &handle.ptr);
  } else {
    std::string doc = "{\"task\": \"" + task + "\"}";
    status = foa_config_from_json(doc.c_str(), &handle.ptr);
  }
  if (status != FOA_OK) return status;
  for (const auto& entry : overrides) {
    auto eq = entry.find('=');
    if (eq == std::string::npos) {
      std::cerr << "override must be key=value: " << entry << "\n";
      return FOA_ERR_INVALID_ARGUMENT;
    }
    status = foa_config_override(handle.ptr, entry.substr(0, eq).c_str(),
                                 entry.substr(eq + 1).c_str());
    if (status != FOA_OK) return status;
  }
  return FOA_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fleet-of-agents runtime"};
  app.require_subcommand(1);

  std::string config_path;
  std::string task = "game24";
  std::vector<std::string> overrides;
  app.add_option("--config,-c", config_path, "JSON config file")->envname("FOA_CONFIG");
  app.add_option("--task", task, "task profile when no config file is given")
      ->check(CLI::IsMember({"game24", "crosswords", "synthetic_tree"}));
  app.add_option("--set,-s", overrides, "config override, dotted key=value (repeatable)");

  auto* run = app.add_subcommand("run", "execute a single seeded run");
  std::string puzzle, puzzle_file, trace_path;
  int puzzle_index = 0;
  run->add_option("--puzzle,-p", puzzle, "instance spec, e.g. \"4 4 6 8\"");
  run->add_option("--puzzle-file", puzzle_file, "benchmark file");
  run->add_option("--index", puzzle_index, "instance index within --puzzle-file");
  run->add_option("--trace", trace_path, "trace output file (JSONL)");

  auto* experiment = app.add_subcommand("experiment", "run a seeded batch over a puzzle set");
  std::string exp_puzzles, exp_out = "out";
  int repetitions = 1, jobs = 1;
  experiment->add_option("--puzzles", exp_puzzles, "benchmark file")->required();
  experiment->add_option("--repetitions,-r", repetitions, "seeded repetitions");
  experiment->add_option("--out,-o", exp_out, "output directory");
  experiment->add_option("--jobs,-j", jobs, "parallel runs");

  auto* ablate = app.add_subcommand("ablate", "baseline plus ablation-switch experiments");
  std::string abl_puzzles, abl_out = "ablations", abl_flags;
  int abl_repetitions = 1, abl_jobs = 1;
  ablate->add_option("--puzzles", abl_puzzles, "benchmark file")->required();
  ablate->add_option("--flags", abl_flags,
                     "comma-separated subset of: no_selection,max_resampling,gamma_zero,"
                     "gamma_one,no_cache,no_batching (default: all)");
  ablate->add_option("--repetitions,-r", abl_repetitions, "seeded repetitions");
  ablate->add_option("--out,-o", abl_out, "output directory");
  ablate->add_option("--jobs,-j", abl_jobs, "parallel runs");

  auto* replay = app.add_subcommand("replay", "re-execute a trace and verify the hash");
  std::string replay_trace;
  replay->add_option("trace", replay_trace, "trace file")->required();

  auto* report = app.add_subcommand("report", "flatten experiment summaries to CSV");
  std::string report_path, report_out;
  report->add_option("path", report_path, "summary.json file or directory")->required();
  report->add_option("--out,-o", report_out, "write CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  ConfigHandle config;
  if (app.got_subcommand(run) || app.got_subcommand(experiment) || app.got_subcommand(ablate)) {
    foa_status status = build_config(config_path, task, overrides, config);
    if (status != FOA_OK) return die(status, "config");
  }

  if (app.got_subcommand(run)) {
    OwnedString result;
    foa_status status =
        foa_run(config.ptr, puzzle.empty() ? nullptr : puzzle.c_str(),
                puzzle_file.empty() ? nullptr : puzzle_file.c_str(), puzzle_index,
                trace_path.empty() ? nullptr : trace_path.c_str(), &result.ptr);
    if (status != FOA_OK) return die(status, "run");
    std::cout << result.ptr << "\n";
    return 0;
  }

  if (app.got_subcommand(experiment)) {
    OwnedString summary;
    foa_status status = foa_experiment(config.ptr, exp_puzzles.c_str(), repetitions,
                                       exp_out.c_str(), jobs, &summary.ptr);
    if (status != FOA_OK) return die(status, "experiment");
    std::cout << summary.ptr << "\n";
    // exit 0 only when every run completed
    return nlohmann::json::parse(summary.ptr).value("warnings", 0) == 0 ? 0 : 1;
  }

  if (app.got_subcommand(ablate)) {
    OwnedString out;
    foa_status status =
        foa_ablate(config.ptr, abl_puzzles.c_str(), abl_repetitions,
                   abl_flags.empty() ? nullptr : abl_flags.c_str(), abl_out.c_str(), abl_jobs,
                   &out.ptr);
    if (status != FOA_OK) return die(status, "ablate");
    std::cout << out.ptr << "\n";
    int warnings = 0;
    for (const auto& [_, summary] : nlohmann::json::parse(out.ptr).items())
      warnings += summary.value("warnings", 0);
    return warnings == 0 ? 0 : 1;
  }

  if (app.got_subcommand(replay)) {
    int match = 0;
    OwnedString out;
    foa_status status = foa_replay(replay_trace.c_str(), &match, &out.ptr);
    if (status != FOA_OK) return die(status, "replay");
    std::cout << out.ptr << "\n";
    return match ? 0 : 1;
  }

  if (app.got_subcommand(report)) {
    OwnedString csv;
    foa_status status = foa_report_csv(report_path.c_str(), &csv.ptr);
    if (status != FOA_OK) return die(status, "report");
    if (report_out.empty()) {
      std::cout << csv.ptr;
    } else {
      std::FILE* f = std::fopen(report_out.c_str(), "wb");
      if (!f) {
        std::cerr << "cannot open " << report_out << "\n";
        return 1;
      }
      std::fputs(csv.ptr, f);
      std::fclose(f);
    }
    return 0;
  }
  return 1;
}
