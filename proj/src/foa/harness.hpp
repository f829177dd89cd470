#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "foa/config.hpp"
#include "foa/crossword.hpp"
#include "foa/run.hpp"

namespace foa {

// One benchmark instance: the spec string for enumerable tasks ("4 4 6 8",
// or a tree seed) plus the full puzzle for crosswords.
struct TaskInstance {
  std::string id;
  std::string spec;
  std::optional<CrosswordPuzzle> crossword;

  nlohmann::json to_json() const;
  static TaskInstance from_json(const nlohmann::json& j);
};

std::unique_ptr<Environment> make_environment(const Config& config, const TaskInstance& instance);

// Builds the full stack from configuration (environment, backend client,
// executors, policy, value service) and drives one run, streaming trace
// events to `trace_sink` when given.
RunResult execute_run(const Config& config, const TaskInstance& instance,
                      std::ostream* trace_sink);

// Plain-text benchmark loaders. Game of 24: four integers per line.
// Crosswords: blocks of 10 clue lines followed by 5 grid rows, separated
// by blank lines. Synthetic trees: one seed per line. '#' starts a
// comment.
std::vector<TaskInstance> load_instances(const std::string& task, const std::string& path);

struct RunRecord {
  int repetition = 0;
  int index = 0;
  std::string id;
  std::uint64_t seed = 0;
  double metric = 0.0;
  bool solved = false;
  int steps = 0;
  double usd = 0.0;
  std::string trace_file;
  std::string trace_hash;
  bool failed = false;
  std::string error;
};

struct ExperimentSummary {
  std::string task;
  std::string backend_id;
  std::string metric_name;  // success_rate | mean_overlap
  int repetitions = 0;
  int puzzle_count = 0;
  double metric_mean = 0.0;
  std::optional<double> metric_stderr;  // absent with fewer than 2 repetitions
  std::vector<double> per_repetition;
  std::vector<RunRecord> per_run;
  double cost_usd = 0.0;
  std::vector<std::uint64_t> seed_list;
  int warnings = 0;  // failed runs, excluded from the metric

  nlohmann::json to_json() const;
};

// repetitions x |instances| seeded runs; run i of repetition r uses seed
// base_seed + r*1'000'000 + i. One trace file per run plus summary.json in
// out_dir; `jobs` > 1 executes independent runs in parallel.
ExperimentSummary run_experiment(const Config& config, const std::vector<TaskInstance>& instances,
                                 int repetitions, const std::string& out_dir, int jobs = 1);

struct ReplayReport {
  bool match = false;
  std::string original_hash;
  std::string replayed_hash;
};

// Re-executes the run described by a trace's init event and compares the
// regenerated event stream hash against the file's bytes.
ReplayReport replay_trace(const std::string& trace_path);

// Flattens one or more experiment summaries (a summary.json file or a
// directory containing them) into CSV table rows.
std::string report_csv(const std::string& summary_path);

}  // namespace foa
