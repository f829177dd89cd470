#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "foa/env.hpp"

namespace foa {

// Append-only record of every visited state, with the most recent value
// estimate when one exists. Backs both backtracking (candidate pool) and
// best-state retention for tasks scored at budget end. Entries keep
// insertion order; a state is keyed by its canonical serialization and a
// re-visit refreshes the value estimate rather than adding a row.
class StateHistory {
 public:
  struct Entry {
    State state;
    std::optional<double> value;
    int evaluated_at = -1;   // timestep of the most recent value estimate
    int first_visited = 0;
    int last_visited = 0;
  };

  void record_visit(const State& state, int t);
  void record_value(const State& state, double value, int t);

  const std::vector<Entry>& entries() const { return entries_; }
  const Entry* find(const std::string& key) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace foa
