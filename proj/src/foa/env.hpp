#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace foa {

// Immutable, environment-defined search state. `key()` is the canonical
// serialization: two payloads representing the same environment state must
// serialize identically. States are shared, never mutated in place.
class StateBase {
 public:
  virtual ~StateBase() = default;
  virtual std::string key() const = 0;
  virtual nlohmann::json to_json() const = 0;
};

using State = std::shared_ptr<const StateBase>;

// A task environment: legal-move generation, solution/terminal predicates,
// prompt rendering, and scoring. Environments are pure-function move
// generators over immutable states and are safe for concurrent use.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string name() const = 0;
  virtual State initial_state() const = 0;

  // All legal successors in canonical order, deduplicated. Environments
  // whose move set is not enumerable (crosswords) return an empty list and
  // rely on parse_action.
  virtual std::vector<State> propose_moves(const State& state) const = 0;

  virtual bool is_solution(const State& state) const = 0;

  // Dead end: no further progress possible and not a solution.
  virtual bool is_terminal(const State& state) const = 0;

  // Key the value function conditions on; coarser than `key()` when states
  // with different derivations are value-equivalent.
  virtual std::string value_key(const State& state) const { return state->key(); }

  // Whether a run stops at the first solution or collects candidates and is
  // scored at budget end.
  virtual bool stop_on_first_solution() const = 0;

  // The `{input}` substitution text for this state's step prompt.
  virtual std::string prompt_input(const State& state) const = 0;

  // Parses a single line of policy output into a legal successor of
  // `state`, or nullopt when the line is malformed or illegal.
  virtual std::optional<State> parse_action(const State& state, const std::string& line) const {
    (void)state;
    (void)line;
    return std::nullopt;
  }

  // Task metric for a state in [0, 1]; used to retain the best candidate
  // when stop_on_first_solution() is false.
  virtual double progress_score(const State& state) const {
    return is_solution(state) ? 1.0 : 0.0;
  }

  // Human-readable payload for a reported solution / best state.
  virtual std::string solution_payload(const State& state) const { return state->key(); }
};

}  // namespace foa
