#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "foa/env.hpp"
#include "foa/history.hpp"
#include "foa/trace.hpp"
#include "foa/value.hpp"

namespace foa {

struct ValueEstimate {
  std::string state_key;  // canonical value key
  double value = 0.0;
  int evaluated_at = 0;
  ValueSource source = ValueSource::heuristic;
};

// Run-scoped evaluation front end: a state-to-value cache guaranteeing a
// single backend evaluation per distinct value key, terminal short-circuit,
// and history bookkeeping. The cache lives for one run and is owned by a
// single coordinator; value functions may fan out internally.
class ValueService {
 public:
  ValueService(ValueFn& fn, bool cache_enabled) : fn_(fn), cache_enabled_(cache_enabled) {}

  // Evaluates states[i] attributing the estimate to timestep stamps[i].
  // Cached keys are served without touching the value function; uncached
  // distinct keys are evaluated exactly once (duplicates collapse). With
  // the cache disabled every instance is evaluated. New estimates are
  // written to the cache and to `history`.
  std::vector<ValueEstimate> evaluate_batch(const Environment& env,
                                            const std::vector<State>& states,
                                            const std::vector<int>& stamps, int t_now,
                                            StateHistory* history, TraceWriter* trace);

  std::vector<ValueEstimate> evaluate_batch(const Environment& env,
                                            const std::vector<State>& states, int t_now,
                                            StateHistory* history, TraceWriter* trace);

  // Number of per-state evaluations performed by the value function.
  std::int64_t evaluations() const { return evaluations_; }
  std::int64_t cache_hits() const { return hits_; }
  std::int64_t cache_misses() const { return misses_; }
  std::size_t cache_size() const { return cache_.size(); }

 private:
  ValueFn& fn_;
  bool cache_enabled_;
  std::unordered_map<std::string, ValueEstimate> cache_;
  std::int64_t evaluations_ = 0;
  std::int64_t hits_ = 0;
  std::int64_t misses_ = 0;
};

}  // namespace foa
