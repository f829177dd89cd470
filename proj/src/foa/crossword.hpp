#pragma once

#include <array>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "foa/env.hpp"

namespace foa {

// A 5x5 mini-crossword instance: ten clues (h1-h5 rows, v1-v5 columns) and
// the ground-truth grid used for overlap scoring.
struct CrosswordPuzzle {
  std::array<std::string, 10> clues;     // h1..h5 then v1..v5
  std::array<char, 25> solution;         // lowercase letters, row-major
};

struct CrosswordState : StateBase {
  std::array<char, 25> board;            // lowercase letter or ' '
  std::set<std::string> filled_slots;    // slot ids ever written, "h1".."v5"

  CrosswordState() { board.fill(' '); }

  std::string key() const override;
  nlohmann::json to_json() const override;
};

using CrosswordStatePtr = std::shared_ptr<const CrosswordState>;

// Cell indices of a slot id ("h1".."h5", "v1".."v5"), or nullopt when the
// id is malformed.
std::optional<std::array<int, 5>> slot_cells(const std::string& slot);

// Writes `word` into `slot`, overwriting prior letters. Returns nullopt for
// an invalid slot or a word that is not exactly five letters.
std::optional<CrosswordStatePtr> apply_word(const CrosswordState& state, const std::string& slot,
                                            const std::string& word);

// Fraction of cells matching the ground truth in both letter and position.
double overlap(const CrosswordState& state, const std::array<char, 25>& ground_truth);

// Slots whose letters differ between the two boards; a crossing slot
// touched by an overwrite counts as changed.
std::vector<std::string> changed_slots(const CrosswordState& before, const CrosswordState& after);

class CrosswordEnv : public Environment {
 public:
  explicit CrosswordEnv(CrosswordPuzzle puzzle) : puzzle_(std::move(puzzle)) {}

  std::string name() const override { return "crosswords"; }
  State initial_state() const override;
  // Not enumerable: candidate words come from the policy.
  std::vector<State> propose_moves(const State&) const override { return {}; }
  bool is_solution(const State&) const override { return false; }
  bool is_terminal(const State& state) const override;
  std::string value_key(const State& state) const override;
  bool stop_on_first_solution() const override { return false; }
  std::string prompt_input(const State& state) const override;
  std::optional<State> parse_action(const State& state, const std::string& line) const override;
  double progress_score(const State& state) const override;
  std::string solution_payload(const State& state) const override;

  const CrosswordPuzzle& puzzle() const { return puzzle_; }

  // "<clue>: <pattern>" line for one slot, the value prompt's input form,
  // e.g. "Incorrect; to injure: w _ o _ g".
  std::string slot_value_input(const CrosswordState& state, int slot_index) const;

 private:
  CrosswordPuzzle puzzle_;
};

}  // namespace foa
