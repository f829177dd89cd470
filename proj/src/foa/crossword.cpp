#include "foa/crossword.hpp"

#include <algorithm>
#include <cctype>

namespace foa {
namespace {

const char* kSlotIds[10] = {"h1", "h2", "h3", "h4", "h5", "v1", "v2", "v3", "v4", "v5"};

bool is_five_letters(const std::string& word) {
  if (word.size() != 5) return false;
  return std::all_of(word.begin(), word.end(),
                     [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
}

std::string to_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::string CrosswordState::key() const {
  std::string k = "xw:";
  for (char c : board) k += c == ' ' ? '.' : c;
  k += "|";
  bool first = true;
  for (const auto& s : filled_slots) {
    if (!first) k += ",";
    k += s;
    first = false;
  }
  return k;
}

nlohmann::json CrosswordState::to_json() const {
  std::string cells;
  for (char c : board) cells += c == ' ' ? '.' : c;
  nlohmann::json j;
  j["board"] = cells;
  j["filled"] = std::vector<std::string>(filled_slots.begin(), filled_slots.end());
  return j;
}

std::optional<std::array<int, 5>> slot_cells(const std::string& slot) {
  if (slot.size() != 2) return std::nullopt;
  int pos = slot[1] - '1';
  if (pos < 0 || pos > 4) return std::nullopt;
  std::array<int, 5> cells{};
  if (slot[0] == 'h') {
    for (int i = 0; i < 5; ++i) cells[i] = pos * 5 + i;
  } else if (slot[0] == 'v') {
    for (int i = 0; i < 5; ++i) cells[i] = i * 5 + pos;
  } else {
    return std::nullopt;
  }
  return cells;
}

std::optional<CrosswordStatePtr> apply_word(const CrosswordState& state, const std::string& slot,
                                            const std::string& word) {
  auto cells = slot_cells(slot);
  std::string lower = to_lower(word);
  if (!cells || !is_five_letters(lower)) return std::nullopt;
  auto next = std::make_shared<CrosswordState>(state);
  for (int i = 0; i < 5; ++i) next->board[(*cells)[i]] = lower[i];
  next->filled_slots.insert(slot);
  return next;
}

double overlap(const CrosswordState& state, const std::array<char, 25>& ground_truth) {
  int matches = 0;
  for (int i = 0; i < 25; ++i) {
    if (state.board[i] != ' ' && state.board[i] == ground_truth[i]) ++matches;
  }
  return matches / 25.0;
}

std::vector<std::string> changed_slots(const CrosswordState& before, const CrosswordState& after) {
  std::vector<std::string> changed;
  for (const char* slot : kSlotIds) {
    auto cells = *slot_cells(slot);
    for (int c : cells) {
      if (before.board[c] != after.board[c]) {
        changed.emplace_back(slot);
        break;
      }
    }
  }
  return changed;
}

State CrosswordEnv::initial_state() const { return std::make_shared<CrosswordState>(); }

bool CrosswordEnv::is_terminal(const State& state) const {
  return static_cast<const CrosswordState&>(*state).filled_slots.size() == 10;
}

std::string CrosswordEnv::value_key(const State& state) const {
  // The value prompt conditions on the whole board.
  const auto& s = static_cast<const CrosswordState&>(*state);
  std::string k;
  for (char c : s.board) k += c == ' ' ? '.' : c;
  return k;
}

std::string CrosswordEnv::prompt_input(const State& state) const {
  const auto& s = static_cast<const CrosswordState&>(*state);
  std::string text = "Current board:\n";
  for (int row = 0; row < 5; ++row) {
    for (int col = 0; col < 5; ++col) {
      if (col) text += ' ';
      char c = s.board[row * 5 + col];
      text += c == ' ' ? '_' : c;
    }
    text += '\n';
  }
  text += "\nHorizontal:\n";
  for (int i = 0; i < 5; ++i)
    text += std::string(kSlotIds[i]) + ". " + puzzle_.clues[i] + "\n";
  text += "\nVertical:\n";
  for (int i = 0; i < 5; ++i)
    text += std::string(kSlotIds[5 + i]) + ". " + puzzle_.clues[5 + i] + "\n";
  return text;
}

std::optional<State> CrosswordEnv::parse_action(const State& state, const std::string& line) const {
  // Expected form: "h1. apple (medium)"; the confidence tag is optional.
  const auto& s = static_cast<const CrosswordState&>(*state);
  auto dot = line.find('.');
  if (dot == std::string::npos) return std::nullopt;
  std::string slot = line.substr(0, dot);
  slot.erase(0, slot.find_first_not_of(" \t"));
  size_t word_start = line.find_first_not_of(" \t", dot + 1);
  if (word_start == std::string::npos) return std::nullopt;
  size_t word_end = line.find_first_of(" \t(", word_start);
  std::string word = line.substr(word_start, word_end == std::string::npos
                                                 ? std::string::npos
                                                 : word_end - word_start);
  auto next = apply_word(s, slot, word);
  if (!next) return std::nullopt;
  return *next;
}

double CrosswordEnv::progress_score(const State& state) const {
  return overlap(static_cast<const CrosswordState&>(*state), puzzle_.solution);
}

std::string CrosswordEnv::solution_payload(const State& state) const {
  return value_key(state);
}

std::string CrosswordEnv::slot_value_input(const CrosswordState& state, int slot_index) const {
  auto cells = *slot_cells(kSlotIds[slot_index]);
  std::string pattern;
  for (int i = 0; i < 5; ++i) {
    if (i) pattern += ' ';
    char c = state.board[cells[i]];
    pattern += c == ' ' ? '_' : c;
  }
  return puzzle_.clues[slot_index] + ": " + pattern;
}

}  // namespace foa
