#include "foa/value.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

#include "foa/crossword.hpp"
#include "foa/game24.hpp"
#include "foa/prompts.hpp"
#include "foa/synthetic_tree.hpp"

namespace foa {

const char* value_source_name(ValueSource source) {
  switch (source) {
    case ValueSource::oracle: return "oracle";
    case ValueSource::heuristic: return "heuristic";
    case ValueSource::backend: return "backend";
    case ValueSource::cache: return "cache";
  }
  return "unknown";
}

double label_to_value(const std::string& label, const LabelValueMap& labels, bool* recognized) {
  if (recognized) *recognized = true;
  if (label == "sure") return labels.sure;
  if (label == "likely") return labels.likely;
  if (label == "maybe") return labels.maybe;
  if (label == "impossible") return labels.impossible;
  if (recognized) *recognized = false;
  return labels.fallback;
}

std::string extract_label(const std::string& completion_text) {
  std::string last_line;
  std::istringstream in(completion_text);
  std::string line;
  while (std::getline(in, line)) {
    auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    auto end = line.find_last_not_of(" \t\r");
    last_line = line.substr(begin, end - begin + 1);
  }
  std::transform(last_line.begin(), last_line.end(), last_line.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  while (!last_line.empty() && std::ispunct(static_cast<unsigned char>(last_line.back())))
    last_line.pop_back();
  auto space = last_line.find_last_of(" \t");
  if (space != std::string::npos) last_line = last_line.substr(space + 1);
  return last_line;
}

namespace {

// Recursive exact search with memoization on the sorted-multiset key.
bool reachable_24(std::vector<Rational> nums, std::unordered_map<std::string, bool>& memo) {
  if (nums.size() == 1) return nums[0] == Rational::from_int(24);
  std::sort(nums.begin(), nums.end());
  std::string key = join_rationals(nums);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  bool found = false;
  for (size_t i = 0; i < nums.size() && !found; ++i) {
    for (size_t j = i + 1; j < nums.size() && !found; ++j) {
      Rational a = nums[i], b = nums[j];
      std::vector<Rational> rest;
      rest.reserve(nums.size() - 1);
      for (size_t k = 0; k < nums.size(); ++k)
        if (k != i && k != j) rest.push_back(nums[k]);

      std::vector<Rational> results = {a + b, a - b, b - a, a * b};
      if (!b.is_zero()) results.push_back(a / b);
      if (!a.is_zero()) results.push_back(b / a);
      for (const auto& r : results) {
        rest.push_back(r);
        if (reachable_24(rest, memo)) {
          found = true;
          break;
        }
        rest.pop_back();
      }
    }
  }
  memo.emplace(std::move(key), found);
  return found;
}

double aggregate(const std::vector<double>& values, ValueAggregation aggregation) {
  double total = 0.0;
  for (double v : values) total += v;
  if (values.empty()) return 0.0;
  return aggregation == ValueAggregation::mean ? total / values.size() : total;
}

}  // namespace

double oracle_value_24(const std::vector<Rational>& remaining) {
  static thread_local std::unordered_map<std::string, bool> memo;
  if (remaining.empty() || remaining.size() > 4) return 0.0;
  return reachable_24(remaining, memo) ? 1.0 : 0.0;
}

std::vector<double> Oracle24Value::evaluate(const Environment& env,
                                            const std::vector<State>& states, int t_now,
                                            std::vector<std::string>* warnings) {
  (void)env;
  (void)t_now;
  (void)warnings;
  std::vector<double> values;
  values.reserve(states.size());
  for (const auto& state : states) {
    const auto& s = static_cast<const Game24State&>(*state);
    values.push_back(oracle_value_24(s.remaining));
  }
  return values;
}

std::vector<double> SyntheticTreeValue::evaluate(const Environment& env,
                                                 const std::vector<State>& states, int t_now,
                                                 std::vector<std::string>* warnings) {
  (void)t_now;
  (void)warnings;
  const auto& tree = static_cast<const SyntheticTreeEnv&>(env);
  std::vector<double> values;
  values.reserve(states.size());
  for (const auto& state : states) values.push_back(tree.oracle_value(state));
  return values;
}

std::vector<double> ProgressValue::evaluate(const Environment& env,
                                            const std::vector<State>& states, int t_now,
                                            std::vector<std::string>* warnings) {
  (void)t_now;
  (void)warnings;
  std::vector<double> values;
  values.reserve(states.size());
  for (const auto& state : states) values.push_back(env.progress_score(state));
  return values;
}

std::vector<double> Backend24Value::evaluate(const Environment& env,
                                             const std::vector<State>& states, int t_now,
                                             std::vector<std::string>* warnings) {
  std::vector<std::string> prompts;
  prompts.reserve(states.size());
  for (const auto& state : states)
    prompts.push_back(render_prompt(kGame24ValuePrompt, env.prompt_input(state)));

  auto sampled = executor_.complete_samples(prompts, samples_, t_now);

  std::vector<double> values;
  values.reserve(states.size());
  for (size_t i = 0; i < states.size(); ++i) {
    std::vector<double> mapped;
    mapped.reserve(sampled[i].size());
    for (const auto& output : sampled[i]) {
      bool recognized = true;
      std::string label = extract_label(output);
      mapped.push_back(label_to_value(label, labels_, &recognized));
      if (!recognized && warnings)
        warnings->push_back("unrecognized value label: \"" + label + "\"");
    }
    values.push_back(aggregate(mapped, aggregation_));
  }
  return values;
}

std::vector<double> BackendCrosswordValue::evaluate(const Environment& env,
                                                    const std::vector<State>& states, int t_now,
                                                    std::vector<std::string>* warnings) {
  const auto& xw = static_cast<const CrosswordEnv&>(env);

  auto slot_has_letters = [](const CrosswordState& s, int slot) {
    std::string id = (slot < 5 ? "h" : "v") + std::to_string(slot % 5 + 1);
    for (int cell : *slot_cells(id))
      if (s.board[cell] != ' ') return true;
    return false;
  };

  // One prompt per slot that has any letters; slot i of state j is
  // flattened into a single batch.
  std::vector<std::string> prompts;
  std::vector<std::pair<size_t, int>> owner;  // (state index, slot index)
  for (size_t i = 0; i < states.size(); ++i) {
    const auto& s = static_cast<const CrosswordState&>(*states[i]);
    for (int slot = 0; slot < 10; ++slot) {
      if (!slot_has_letters(s, slot)) continue;
      prompts.push_back(render_prompt(kCrosswordsValuePrompt, xw.slot_value_input(s, slot)));
      owner.emplace_back(i, slot);
    }
  }

  std::vector<std::vector<double>> per_state(states.size());
  if (!prompts.empty()) {
    auto outputs = executor_.complete_all(prompts, t_now);
    for (size_t p = 0; p < outputs.size(); ++p) {
      bool recognized = true;
      std::string label = extract_label(outputs[p]);
      double v = label_to_value(label, labels_, &recognized);
      if (!recognized && warnings)
        warnings->push_back("unrecognized value label: \"" + label + "\"");
      per_state[owner[p].first].push_back(v);
    }
  }

  std::vector<double> values;
  values.reserve(states.size());
  for (const auto& mapped : per_state) values.push_back(aggregate(mapped, aggregation_));
  return values;
}

}  // namespace foa
