#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "foa/env.hpp"
#include "foa/rational.hpp"

namespace foa {

// One Game-of-24 search state: the multiset of remaining numbers plus the
// ordered log of steps that produced it from the original puzzle. Numbers
// are exact rationals throughout; the prompt's rounded decimals are a
// display artifact of the source material, not of this environment.
struct Game24State : StateBase {
  std::vector<Rational> remaining;      // sorted ascending
  std::vector<std::string> steps_log;   // "a op b = c (left: ...)" per applied move
  std::vector<std::int64_t> puzzle;     // the original numbers, as given

  std::string key() const override;
  nlohmann::json to_json() const override;
};

using Game24StatePtr = std::shared_ptr<const Game24State>;

// Enumerates every successor of `state`: for each unordered pair (a, b) with
// a <= b, the results of a+b, a-b, b-a, a*b, a/b, b/a (divisions by zero
// skipped), deduplicated by resulting multiset with the first derivation
// kept. Order is canonical: pairs ascending over the sorted remaining list,
// operations in the order above.
// Precondition: |remaining| >= 2.
std::vector<Game24StatePtr> propose_moves_24(const Game24State& state);

// True iff remaining == {24} exactly and replaying steps_log from the
// puzzle is arithmetically valid, consumes each original number exactly
// once, and reproduces `remaining`.
bool is_solution_24(const Game24State& state);

// Folds steps_log into one parenthesized expression equal to 24, e.g.
// "(6 - 4) * (4 + 8) = 24". Precondition: is_solution_24(state).
std::string render_answer_24(const Game24State& state);

// Parses one policy output line of the form "a op b = c (left: numbers)"
// against the legal move set of `state`. The arithmetic must be exact and
// the left-list must match the resulting multiset; otherwise nullopt.
std::optional<Game24StatePtr> parse_move_24(const Game24State& state, const std::string& line);

class Game24Env : public Environment {
 public:
  // `puzzle` is whitespace-separated integers, e.g. "4 4 6 8".
  explicit Game24Env(const std::string& puzzle);

  std::string name() const override { return "game24"; }
  State initial_state() const override;
  std::vector<State> propose_moves(const State& state) const override;
  bool is_solution(const State& state) const override;
  bool is_terminal(const State& state) const override;
  std::string value_key(const State& state) const override;
  bool stop_on_first_solution() const override { return true; }
  std::string prompt_input(const State& state) const override;
  std::optional<State> parse_action(const State& state, const std::string& line) const override;
  std::string solution_payload(const State& state) const override;

 private:
  std::vector<std::int64_t> puzzle_;
};

}  // namespace foa
