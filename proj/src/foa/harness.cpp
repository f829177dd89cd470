#include "foa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "foa/backend.hpp"
#include "foa/game24.hpp"
#include "foa/prompts.hpp"
#include "foa/synthetic_tree.hpp"
#include "foa/value.hpp"

namespace foa {
namespace {

namespace fs = std::filesystem;

std::uint64_t parse_seed_spec(const std::string& spec, std::uint64_t fallback) {
  if (spec.empty()) return fallback;
  try {
    return std::stoull(spec);
  } catch (const std::exception&) {
    throw ConfigError("synthetic tree instance spec must be an integer seed, got: " + spec);
  }
}

ValueHint make_policy_hint(const Config& config) {
  if (config.policy.hint == "none") return nullptr;
  // "oracle": the task's exact (or best available) state scorer.
  return [](const Environment& env, const State& state) -> double {
    if (env.name() == "game24")
      return oracle_value_24(static_cast<const Game24State&>(*state).remaining);
    if (env.name() == "synthetic_tree")
      return static_cast<const SyntheticTreeEnv&>(env).oracle_value(state);
    return env.progress_score(state);
  };
}

std::unique_ptr<ValueFn> make_value_fn(const Config& config, const Environment& env,
                                       BatchExecutor* executor) {
  if (config.value.type == "oracle") {
    if (env.name() == "game24") return std::make_unique<Oracle24Value>();
    if (env.name() == "synthetic_tree") return std::make_unique<SyntheticTreeValue>();
    return std::make_unique<ProgressValue>();
  }
  // backend
  if (!executor) throw ConfigError("value type 'backend' requires a configured backend");
  ValueAggregation aggregation = config.value.aggregation == "sum" ? ValueAggregation::sum
                                                                   : ValueAggregation::mean;
  if (env.name() == "game24")
    return std::make_unique<Backend24Value>(*executor, config.value.labels, config.value.samples,
                                            aggregation);
  if (env.name() == "crosswords")
    return std::make_unique<BackendCrosswordValue>(*executor, config.value.labels, aggregation);
  throw ConfigError("no backend value prompt for task: " + env.name());
}

std::shared_ptr<CompletionClient> make_client(const Config& config) {
  if (config.backend.type == "none") return nullptr;
  std::shared_ptr<CompletionClient> inner;
  if (config.backend.type == "fixture") {
    inner = std::make_shared<FixtureCompletionClient>(
        FixtureCompletionClient::from_file(config.backend.fixture_path));
  } else {
    inner = std::make_shared<HttpCompletionClient>(config.backend.base_url, config.backend.path,
                                                   config.backend.api_key_env);
  }
  return std::make_shared<RetryingClient>(std::move(inner), config.backend.retries,
                                          config.backend.backoff_ms);
}

const std::string& step_template_for(const std::string& task) {
  static const std::string game24 = kGame24StepPrompt;
  static const std::string crosswords = kCrosswordsStepPrompt;
  if (task == "game24") return game24;
  if (task == "crosswords") return crosswords;
  throw ConfigError("no step prompt template for task: " + task);
}

std::string metric_name_for(const Environment& env) {
  return env.stop_on_first_solution() ? "success_rate" : "mean_overlap";
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double total = 0.0;
  for (double x : xs) total += x;
  return total / xs.size();
}

}  // namespace

nlohmann::json TaskInstance::to_json() const {
  nlohmann::json j;
  j["id"] = id;
  j["spec"] = spec;
  if (crossword) {
    std::string grid(crossword->solution.begin(), crossword->solution.end());
    j["crossword"] = {{"clues", crossword->clues}, {"solution", grid}};
  }
  return j;
}

TaskInstance TaskInstance::from_json(const nlohmann::json& j) {
  TaskInstance instance;
  instance.id = j.value("id", "");
  instance.spec = j.value("spec", "");
  if (j.contains("crossword")) {
    CrosswordPuzzle puzzle;
    auto clues = j["crossword"]["clues"];
    for (std::size_t i = 0; i < 10; ++i) puzzle.clues[i] = clues.at(i).get<std::string>();
    std::string grid = j["crossword"]["solution"].get<std::string>();
    if (grid.size() != 25) throw ConfigError("crossword solution must have 25 cells");
    std::copy(grid.begin(), grid.end(), puzzle.solution.begin());
    instance.crossword = std::move(puzzle);
  }
  return instance;
}

std::unique_ptr<Environment> make_environment(const Config& config, const TaskInstance& instance) {
  if (config.task == "game24") return std::make_unique<Game24Env>(instance.spec);
  if (config.task == "crosswords") {
    if (!instance.crossword)
      throw ConfigError("crosswords task requires a crossword puzzle instance");
    return std::make_unique<CrosswordEnv>(*instance.crossword);
  }
  if (config.task == "synthetic_tree") {
    std::uint64_t tree_seed = parse_seed_spec(instance.spec, config.seed);
    return std::make_unique<SyntheticTreeEnv>(tree_seed, config.tree.branching, config.tree.depth,
                                              config.tree.noise_sigma);
  }
  throw ConfigError("unknown task: " + config.task);
}

RunResult execute_run(const Config& config, const TaskInstance& instance,
                      std::ostream* trace_sink) {
  auto env = make_environment(config, instance);

  CostLedger ledger(config.prices);
  RunBudget budget{config.budget_usd, false};
  TraceWriter trace(trace_sink);

  auto client = make_client(config);
  std::unique_ptr<BatchExecutor> executor;
  if (client) {
    BackendRequest base;
    base.model = config.backend.model;
    base.max_tokens = config.backend.max_tokens;
    base.temperature = config.backend.temperature;
    base.top_p = config.backend.top_p;
    base.stop = config.backend.stop;
    executor = std::make_unique<BatchExecutor>(*client, base, ledger, budget, &trace,
                                               config.batching_enabled,
                                               config.backend.parallelism);
  }

  std::unique_ptr<Policy> policy;
  if (config.policy.type == "enumerator") {
    policy = std::make_unique<EnumeratorPolicy>();
  } else if (config.policy.type == "softmax") {
    policy = std::make_unique<SoftmaxPolicy>(make_policy_hint(config),
                                             config.policy.temperature);
  } else {
    if (!executor) throw ConfigError("policy type 'backend' requires a configured backend");
    policy = std::make_unique<BackendPolicy>(*executor, step_template_for(config.task),
                                             config.policy.retries);
  }

  auto value_fn = make_value_fn(config, *env, executor.get());
  ValueService values(*value_fn, config.cache_enabled);
  StateHistory history;

  RunSettings settings;
  settings.n_agents = config.n_agents;
  settings.max_steps = config.max_steps;
  settings.resample_every_k = config.resample_every_k;
  settings.gamma = config.gamma;
  settings.scheme = config.scheme;
  settings.seed = config.seed;
  settings.budget_usd = config.budget_usd;
  settings.backtrack_known_values_only = config.backtrack_known_values_only;

  nlohmann::json init;
  init["run_id"] = config.task + "-" + std::to_string(config.seed);
  init["env"] = env->name();
  init["n_agents"] = config.n_agents;
  init["config"] = config_to_json(config);
  init["instance"] = instance.to_json();

  return run_fleet(settings, *env, *policy, values, ledger, budget, history, trace,
                   std::move(init));
}

std::vector<TaskInstance> load_instances(const std::string& task, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open puzzle file: " + path);

  std::vector<std::string> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    auto end = raw.find_last_not_of(" \t\r");
    lines.push_back(end == std::string::npos ? "" : raw.substr(0, end + 1));
  }

  std::vector<TaskInstance> instances;
  if (task == "game24" || task == "synthetic_tree") {
    int expected = task == "game24" ? 4 : 1;
    for (const auto& line : lines) {
      if (line.empty()) continue;
      std::istringstream tokens(line);
      std::vector<std::string> parts;
      std::string tok;
      while (tokens >> tok) parts.push_back(tok);
      if (static_cast<int>(parts.size()) != expected)
        throw ConfigError("bad puzzle line (want " + std::to_string(expected) +
                          " numbers): " + line);
      TaskInstance instance;
      std::string spec;
      for (std::size_t i = 0; i < parts.size(); ++i) spec += (i ? " " : "") + parts[i];
      instance.spec = spec;
      instance.id = spec;
      instances.push_back(std::move(instance));
    }
    return instances;
  }
  if (task == "crosswords") {
    // Blocks of 15 non-empty lines: 10 clues (h1-h5, v1-v5) then 5 grid rows.
    std::vector<std::string> block;
    auto flush = [&]() {
      if (block.empty()) return;
      if (block.size() != 15)
        throw ConfigError("crossword block must have 15 lines (10 clues + 5 rows), got " +
                          std::to_string(block.size()));
      CrosswordPuzzle puzzle;
      for (int i = 0; i < 10; ++i) puzzle.clues[i] = block[i];
      for (int row = 0; row < 5; ++row) {
        std::string letters;
        for (char c : block[10 + row]) {
          if (std::isalpha(static_cast<unsigned char>(c)))
            letters += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
        if (letters.size() != 5)
          throw ConfigError("crossword grid row must have 5 letters: " + block[10 + row]);
        std::copy(letters.begin(), letters.end(), puzzle.solution.begin() + row * 5);
      }
      TaskInstance instance;
      instance.id = "crossword-" + std::to_string(instances.size());
      instance.crossword = std::move(puzzle);
      instances.push_back(std::move(instance));
      block.clear();
    };
    for (const auto& line : lines) {
      if (line.empty())
        flush();
      else
        block.push_back(line);
    }
    flush();
    return instances;
  }
  throw ConfigError("unknown task: " + task);
}

nlohmann::json ExperimentSummary::to_json() const {
  nlohmann::json j;
  j["task"] = task;
  j["backend_id"] = backend_id;
  j["metric_name"] = metric_name;
  j["repetitions"] = repetitions;
  j["puzzle_count"] = puzzle_count;
  j["metric_mean"] = metric_mean;
  j["metric_stderr"] = metric_stderr ? nlohmann::json(*metric_stderr) : nlohmann::json();
  j["per_repetition"] = per_repetition;
  j["cost_usd"] = cost_usd;
  j["seed_list"] = seed_list;
  j["warnings"] = warnings;
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : per_run) {
    nlohmann::json rj;
    rj["repetition"] = r.repetition;
    rj["index"] = r.index;
    rj["id"] = r.id;
    rj["seed"] = r.seed;
    rj["metric"] = r.metric;
    rj["solved"] = r.solved;
    rj["steps"] = r.steps;
    rj["usd"] = r.usd;
    rj["trace"] = r.trace_file;
    rj["hash"] = r.trace_hash;
    rj["failed"] = r.failed;
    if (r.failed) rj["error"] = r.error;
    runs.push_back(std::move(rj));
  }
  j["per_run"] = std::move(runs);
  return j;
}

ExperimentSummary run_experiment(const Config& config, const std::vector<TaskInstance>& instances,
                                 int repetitions, const std::string& out_dir, int jobs) {
  if (instances.empty()) throw ConfigError("puzzle set is empty");
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  fs::create_directories(out_dir);

  const int total = repetitions * static_cast<int>(instances.size());
  std::vector<RunRecord> records(total);

  std::atomic<int> cursor{0};
  auto worker = [&]() {
    for (;;) {
      int slot = cursor.fetch_add(1);
      if (slot >= total) return;
      int rep = slot / static_cast<int>(instances.size());
      int idx = slot % static_cast<int>(instances.size());
      const auto& instance = instances[idx];

      Config run_config = config;
      run_config.seed = config.seed + static_cast<std::uint64_t>(rep) * 1000000ull +
                        static_cast<std::uint64_t>(idx);

      RunRecord record;
      record.repetition = rep;
      record.index = idx;
      record.id = instance.id;
      record.seed = run_config.seed;
      record.trace_file =
          (fs::path(out_dir) / ("trace_r" + std::to_string(rep) + "_p" + std::to_string(idx) +
                                ".jsonl")).string();
      try {
        std::ofstream sink(record.trace_file, std::ios::binary);
        if (!sink) throw ConfigError("cannot open trace file: " + record.trace_file);
        RunResult result = execute_run(run_config, instance, &sink);
        record.metric = result.metric;
        record.solved = result.solved;
        record.steps = result.steps_taken;
        record.usd = result.total_usd;
        record.trace_hash = result.trace_hash;
      } catch (const std::exception& e) {
        record.failed = true;
        record.error = e.what();
      }
      records[slot] = std::move(record);
    }
  };

  if (jobs > 1) {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  } else {
    worker();
  }

  ExperimentSummary summary;
  summary.task = config.task;
  summary.backend_id = config.backend.type == "none" ? config.value.type : config.backend.model;
  {
    auto env = make_environment(config, instances.front());
    summary.metric_name = metric_name_for(*env);
  }
  summary.repetitions = repetitions;
  summary.puzzle_count = static_cast<int>(instances.size());
  summary.per_run = std::move(records);

  for (int rep = 0; rep < repetitions; ++rep) {
    std::vector<double> metrics;
    for (const auto& record : summary.per_run) {
      if (record.repetition != rep) continue;
      if (record.failed) {
        ++summary.warnings;
        continue;
      }
      metrics.push_back(record.metric);
    }
    summary.per_repetition.push_back(mean_of(metrics));
  }
  summary.metric_mean = mean_of(summary.per_repetition);
  if (repetitions >= 2) {
    double mean = summary.metric_mean;
    double ss = 0.0;
    for (double m : summary.per_repetition) ss += (m - mean) * (m - mean);
    summary.metric_stderr = std::sqrt(ss / (repetitions - 1)) / std::sqrt(repetitions);
  }
  for (const auto& record : summary.per_run) {
    summary.cost_usd += record.usd;
    summary.seed_list.push_back(record.seed);
  }

  std::ofstream out(fs::path(out_dir) / "summary.json");
  out << summary.to_json().dump(2) << "\n";
  return summary;
}

ReplayReport replay_trace(const std::string& trace_path) {
  std::ifstream in(trace_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open trace file: " + trace_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string original = buffer.str();

  ReplayReport report;
  {
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(original);
    report.original_hash = hex.str();
  }

  auto newline = original.find('\n');
  if (newline == std::string::npos) throw ConfigError("trace file has no events");
  nlohmann::json init = nlohmann::json::parse(original.substr(0, newline));
  if (init.value("kind", "") != "init")
    throw ConfigError("trace does not start with an init event");

  Config config = config_from_json(init["payload"]["config"]);
  TaskInstance instance = TaskInstance::from_json(init["payload"]["instance"]);

  std::ostringstream replayed;
  RunResult result = execute_run(config, instance, &replayed);
  report.replayed_hash = result.trace_hash;
  report.match = replayed.str() == original;
  return report;
}

std::string report_csv(const std::string& summary_path) {
  std::vector<fs::path> files;
  fs::path p(summary_path);
  if (fs::is_directory(p)) {
    for (const auto& entry : fs::recursive_directory_iterator(p)) {
      if (entry.is_regular_file() && entry.path().filename() == "summary.json")
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(p);
  }
  if (files.empty()) throw ConfigError("no summary.json found under: " + summary_path);

  std::ostringstream csv;
  csv << "label,task,metric_name,metric_mean,metric_stderr,cost_usd,runs,warnings\n";
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open summary: " + file.string());
    nlohmann::json j;
    in >> j;
    std::string label = file.parent_path().filename().string();
    if (label.empty()) label = file.stem().string();
    csv << label << "," << j.value("task", "") << "," << j.value("metric_name", "") << ","
        << j.value("metric_mean", 0.0) << ",";
    if (j.contains("metric_stderr") && !j["metric_stderr"].is_null())
      csv << j["metric_stderr"].get<double>();
    csv << "," << j.value("cost_usd", 0.0) << ","
        << j.value("repetitions", 0) * j.value("puzzle_count", 0) << "," << j.value("warnings", 0)
        << "\n";
  }
  return csv.str();
}

}  // namespace foa
