#include "foa/value_service.hpp"

#include <stdexcept>

namespace foa {

std::vector<ValueEstimate> ValueService::evaluate_batch(const Environment& env,
                                                        const std::vector<State>& states,
                                                        int t_now, StateHistory* history,
                                                        TraceWriter* trace) {
  return evaluate_batch(env, states, std::vector<int>(states.size(), t_now), t_now, history,
                        trace);
}

std::vector<ValueEstimate> ValueService::evaluate_batch(const Environment& env,
                                                        const std::vector<State>& states,
                                                        const std::vector<int>& stamps, int t_now,
                                                        StateHistory* history,
                                                        TraceWriter* trace) {
  if (stamps.size() != states.size())
    throw std::invalid_argument("evaluate_batch: stamps/states length mismatch");

  std::vector<ValueEstimate> estimates(states.size());
  std::vector<std::size_t> pending;                       // indices needing the value fn
  std::vector<std::size_t> backfill;                      // within-batch duplicates
  std::unordered_map<std::string, std::size_t> in_batch;  // key -> first pending index

  for (std::size_t i = 0; i < states.size(); ++i) {
    std::string key = env.value_key(states[i]);
    estimates[i].state_key = key;
    estimates[i].evaluated_at = stamps[i];

    // Terminal, non-solution states have value exactly 0; no evaluation.
    if (env.is_terminal(states[i])) {
      estimates[i].value = 0.0;
      estimates[i].source = ValueSource::oracle;
      if (history) history->record_value(states[i], 0.0, stamps[i]);
      continue;
    }

    if (cache_enabled_) {
      auto cached = cache_.find(key);
      if (cached != cache_.end()) {
        ++hits_;
        estimates[i].value = cached->second.value;
        estimates[i].source = ValueSource::cache;
        if (history) history->record_value(states[i], cached->second.value, stamps[i]);
        continue;
      }
      ++misses_;
      auto dup = in_batch.find(key);
      if (dup != in_batch.end()) {
        backfill.push_back(i);
        continue;
      }
      in_batch.emplace(std::move(key), i);
    }
    pending.push_back(i);
  }

  std::vector<std::string> warnings;
  if (!pending.empty()) {
    std::vector<State> fresh;
    fresh.reserve(pending.size());
    for (auto i : pending) fresh.push_back(states[i]);
    std::vector<double> values = fn_.evaluate(env, fresh, t_now, &warnings);
    if (values.size() != fresh.size())
      throw std::runtime_error("value function returned wrong number of values");
    evaluations_ += static_cast<std::int64_t>(fresh.size());

    for (std::size_t p = 0; p < pending.size(); ++p) {
      std::size_t i = pending[p];
      estimates[i].value = values[p];
      estimates[i].source = fn_.source();
      if (cache_enabled_) cache_.emplace(estimates[i].state_key, estimates[i]);
      if (history) history->record_value(states[i], values[p], stamps[i]);
    }
  }

  // Resolve within-batch duplicates from the now-populated cache.
  for (std::size_t i : backfill) {
    estimates[i].value = cache_.at(estimates[i].state_key).value;
    estimates[i].source = ValueSource::cache;
    if (history) history->record_value(states[i], estimates[i].value, stamps[i]);
  }

  if (trace) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : estimates) {
      entries.push_back({{"key", e.state_key},
                         {"value", e.value},
                         {"at", e.evaluated_at},
                         {"source", value_source_name(e.source)}});
    }
    nlohmann::json payload;
    payload["entries"] = std::move(entries);
    payload["hits"] = hits_;
    payload["misses"] = misses_;
    payload["evaluations"] = evaluations_;
    if (!warnings.empty()) payload["warnings"] = warnings;
    trace->emit(t_now, "evaluate", std::move(payload));
  }
  return estimates;
}

}  // namespace foa
