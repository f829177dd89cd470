#include "foa/history.hpp"

namespace foa {

void StateHistory::record_visit(const State& state, int t) {
  std::string key = state->key();
  auto it = index_.find(key);
  if (it != index_.end()) {
    entries_[it->second].last_visited = t;
    return;
  }
  index_.emplace(std::move(key), entries_.size());
  entries_.push_back(Entry{state, std::nullopt, -1, t, t});
}

void StateHistory::record_value(const State& state, double value, int t) {
  std::string key = state->key();
  auto it = index_.find(key);
  if (it == index_.end()) {
    index_.emplace(std::move(key), entries_.size());
    entries_.push_back(Entry{state, value, t, t, t});
    return;
  }
  // Most recent estimate wins; the discount is defined on the latest visit.
  auto& entry = entries_[it->second];
  entry.value = value;
  entry.evaluated_at = t;
}

const StateHistory::Entry* StateHistory::find(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return nullptr;
  return &entries_[it->second];
}

}  // namespace foa
