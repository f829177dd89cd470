#pragma once

// Test-only oracles, kept independent of the implementation paths they
// check: plain fraction arithmetic, a brute-force 24 search, a from-scratch
// successor enumerator, and a small infix expression evaluator.

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "foa/backend.hpp"
#include "foa/crossword.hpp"
#include "foa/game24.hpp"
#include "foa/value.hpp"

namespace testsupport {

struct Frac {
  long long n = 0;
  long long d = 1;

  void reduce() {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n == 0) d = 1;
  }
  static Frac make(long long n, long long d) {
    Frac f{n, d};
    f.reduce();
    return f;
  }
  Frac add(Frac o) const { return make(n * o.d + o.n * d, d * o.d); }
  Frac sub(Frac o) const { return make(n * o.d - o.n * d, d * o.d); }
  Frac mul(Frac o) const { return make(n * o.n, d * o.d); }
  Frac div(Frac o) const { return make(n * o.d, d * o.n); }
  bool eq(Frac o) const { return n == o.n && d == o.d; }
  bool lt(Frac o) const { return n * o.d < o.n * d; }
  std::string str() const {
    return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d);
  }
};

// Plain recursive search: can the numbers reach 24 exactly?
inline bool brute_force_24(std::vector<Frac> nums) {
  if (nums.size() == 1) return nums[0].eq(Frac{24, 1});
  for (size_t i = 0; i < nums.size(); ++i) {
    for (size_t j = 0; j < nums.size(); ++j) {
      if (i == j) continue;
      std::vector<Frac> rest;
      for (size_t k = 0; k < nums.size(); ++k)
        if (k != i && k != j) rest.push_back(nums[k]);
      std::vector<Frac> options = {nums[i].add(nums[j]), nums[i].sub(nums[j]),
                                   nums[i].mul(nums[j])};
      if (nums[j].n != 0) options.push_back(nums[i].div(nums[j]));
      for (const auto& r : options) {
        rest.push_back(r);
        if (brute_force_24(rest)) return true;
        rest.pop_back();
      }
    }
  }
  return false;
}

inline bool brute_force_24_ints(const std::vector<std::int64_t>& nums) {
  std::vector<Frac> fracs;
  for (auto v : nums) fracs.push_back(Frac{static_cast<long long>(v), 1});
  return brute_force_24(fracs);
}

// Every successor multiset of a state, as canonical sorted strings.
inline std::set<std::string> enumerate_successor_multisets(std::vector<Frac> nums) {
  std::set<std::string> out;
  for (size_t i = 0; i < nums.size(); ++i) {
    for (size_t j = 0; j < nums.size(); ++j) {
      if (i == j) continue;
      std::vector<Frac> rest;
      for (size_t k = 0; k < nums.size(); ++k)
        if (k != i && k != j) rest.push_back(nums[k]);
      std::vector<Frac> options = {nums[i].add(nums[j]), nums[i].sub(nums[j]),
                                   nums[i].mul(nums[j])};
      if (nums[j].n != 0) options.push_back(nums[i].div(nums[j]));
      for (const auto& r : options) {
        auto multiset = rest;
        multiset.push_back(r);
        std::sort(multiset.begin(), multiset.end(), [](Frac a, Frac b) { return a.lt(b); });
        std::string key;
        for (size_t k = 0; k < multiset.size(); ++k) key += (k ? " " : "") + multiset[k].str();
        out.insert(key);
      }
    }
  }
  return out;
}

// Minimal infix evaluator over exact fractions: integers, + - * /,
// parentheses. Used to round-trip rendered answers.
class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  std::optional<Frac> parse() {
    auto v = expr();
    skip_ws();
    if (!v || pos_ != text_.size()) return std::nullopt;
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }
  std::optional<Frac> expr() {
    auto left = term();
    if (!left) return std::nullopt;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-')) return left;
      char op = text_[pos_++];
      auto right = term();
      if (!right) return std::nullopt;
      left = op == '+' ? left->add(*right) : left->sub(*right);
    }
  }
  std::optional<Frac> term() {
    auto left = atom();
    if (!left) return std::nullopt;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size() || (text_[pos_] != '*' && text_[pos_] != '/')) return left;
      char op = text_[pos_++];
      auto right = atom();
      if (!right) return std::nullopt;
      if (op == '/' && right->n == 0) return std::nullopt;
      left = op == '*' ? left->mul(*right) : left->div(*right);
    }
  }
  std::optional<Frac> atom() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      auto v = expr();
      skip_ws();
      if (!v || pos_ >= text_.size() || text_[pos_] != ')') return std::nullopt;
      ++pos_;
      return v;
    }
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    size_t begin = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == begin) return std::nullopt;
    long long v = std::stoll(text_.substr(begin, pos_ - begin));
    return Frac{negative ? -v : v, 1};
  }

  std::string text_;
  size_t pos_ = 0;
};

// Builds a Game24State from a puzzle and an explicit step log, replaying
// the log to derive `remaining`.
inline std::shared_ptr<const foa::Game24State> make_state(
    const std::vector<std::int64_t>& puzzle, const std::vector<std::string>& log_moves = {}) {
  auto state = std::make_shared<foa::Game24State>();
  state->puzzle = puzzle;
  for (auto v : puzzle) state->remaining.push_back(foa::Rational::from_int(v));
  std::sort(state->remaining.begin(), state->remaining.end());
  std::shared_ptr<const foa::Game24State> current = state;
  for (const auto& move : log_moves) {
    auto next = foa::parse_move_24(*current, move);
    if (!next) throw std::runtime_error("test fixture: illegal move " + move);
    current = *next;
  }
  return current;
}

// "a op b = c (left: ...)" with the left part computed for the caller.
inline std::string move_line(const foa::Game24State& state, const std::string& a, char op,
                             const std::string& b, const std::string& c) {
  auto ra = *foa::Rational::parse(a);
  auto rb = *foa::Rational::parse(b);
  auto rc = *foa::Rational::parse(c);
  auto remaining = state.remaining;
  auto erase_one = [&remaining](const foa::Rational& v) {
    auto it = std::find(remaining.begin(), remaining.end(), v);
    remaining.erase(it);
  };
  erase_one(ra);
  erase_one(rb);
  remaining.push_back(rc);
  std::sort(remaining.begin(), remaining.end());
  std::ostringstream line;
  line << a << " " << op << " " << b << " = " << c
       << " (left: " << foa::join_rationals(remaining) << ")";
  return line.str();
}


// Offline stand-in for a completion model: answers step prompts with the
// legal move lines of the prompt's final "Input:" state and value prompts
// with the exact oracle label. Token usage is length-derived so cost and
// budget paths get exercised.
class SimulatedGame24Backend : public foa::CompletionClient {
 public:
  foa::BackendResponse complete(const foa::BackendRequest& request) override {
    ++requests;
    foa::BackendResponse response;
    response.usage.prompt_tokens = static_cast<std::int64_t>(request.prompt.size() / 4);
    std::string output;
    if (request.prompt.find("Possible next steps:") != std::string::npos) {
      output = step_block(last_input(request.prompt));
    } else {
      output = value_label(last_line(request.prompt));
    }
    for (int i = 0; i < request.n; ++i) response.choices.push_back(output);
    response.usage.completion_tokens =
        static_cast<std::int64_t>(request.n * (output.size() / 4 + 1));
    return response;
  }
  int requests = 0;

 private:
  static std::string last_input(const std::string& prompt) {
    auto pos = prompt.rfind("Input: ");
    auto end = prompt.find('\n', pos);
    return prompt.substr(pos + 7, end - pos - 7);
  }
  static std::string last_line(const std::string& prompt) {
    auto end = prompt.find_last_not_of('\n');
    auto begin = prompt.rfind('\n', end);
    return prompt.substr(begin + 1, end - begin);
  }
  static std::string step_block(const std::string& input) {
    std::vector<std::int64_t> dummy_puzzle = {1, 1, 1, 1};
    auto state = std::make_shared<foa::Game24State>();
    std::istringstream in(input);
    std::string tok;
    while (in >> tok) state->remaining.push_back(*foa::Rational::parse(tok));
    std::sort(state->remaining.begin(), state->remaining.end());
    state->puzzle = dummy_puzzle;
    if (state->remaining.size() < 2) return "no moves";
    std::string block;
    for (const auto& next : foa::propose_moves_24(*state))
      block += next->steps_log.back() + "\n";
    return block;
  }
  static std::string value_label(const std::string& input) {
    std::vector<foa::Rational> nums;
    std::istringstream in(input);
    std::string tok;
    while (in >> tok) {
      auto v = foa::Rational::parse(tok);
      if (!v) return "unparseable";
      nums.push_back(*v);
    }
    double v = foa::oracle_value_24(nums);
    return std::string("thinking it through...\n") + (v > 0 ? "sure" : "impossible");
  }
};


// Crossword counterpart: step prompts get one proposal line per slot (the
// true word for most slots, a decoy for some), value prompts get the exact
// pattern-compatibility label against the bundled solution.
class SimulatedCrosswordBackend : public foa::CompletionClient {
 public:
  explicit SimulatedCrosswordBackend(foa::CrosswordPuzzle puzzle) : puzzle_(std::move(puzzle)) {}

  foa::BackendResponse complete(const foa::BackendRequest& request) override {
    ++requests;
    foa::BackendResponse response;
    response.usage.prompt_tokens = static_cast<std::int64_t>(request.prompt.size() / 4);
    std::string output;
    if (request.prompt.find("mini crossword") != std::string::npos) {
      output = step_block();
    } else {
      output = value_label(request.prompt);
    }
    for (int i = 0; i < request.n; ++i) response.choices.push_back(output);
    response.usage.completion_tokens =
        static_cast<std::int64_t>(request.n * (output.size() / 4 + 1));
    return response;
  }
  int requests = 0;

 private:
  std::string slot_word(int index) const {
    std::string word;
    auto cells = *foa::slot_cells((index < 5 ? "h" : "v") + std::to_string(index % 5 + 1));
    for (int cell : cells) word += puzzle_.solution[cell];
    return word;
  }
  std::string step_block() const {
    std::string block;
    for (int slot = 0; slot < 10; ++slot) {
      std::string id = (slot < 5 ? "h" : "v") + std::to_string(slot % 5 + 1);
      std::string word = slot_word(slot);
      block += id + ". " + word + " (high)\n";
      if (slot % 3 == 0) {
        std::string decoy = word;
        decoy[0] = decoy[0] == 'z' ? 'a' : 'z';
        block += id + ". " + decoy + " (low)\n";
      }
    }
    return block;
  }
  std::string value_label(const std::string& prompt) const {
    // last non-empty line is "<clue>: <pattern>"
    auto end = prompt.find_last_not_of('\n');
    auto begin = prompt.rfind('\n', end);
    std::string input = prompt.substr(begin + 1, end - begin);
    auto colon = input.rfind(": ");
    if (colon == std::string::npos) return "impossible";
    std::string clue = input.substr(0, colon);
    std::string pattern = input.substr(colon + 2);
    for (int slot = 0; slot < 10; ++slot) {
      if (puzzle_.clues[slot] != clue) continue;
      std::string word = slot_word(slot);
      bool compatible = true;
      int letter = 0;
      for (std::size_t i = 0; i < pattern.size() && letter < 5; ++i) {
        char c = pattern[i];
        if (c == ' ') continue;
        if (c != '_' && c != word[letter]) compatible = false;
        ++letter;
      }
      return compatible ? "sure" : "impossible";
    }
    return "maybe";
  }

  foa::CrosswordPuzzle puzzle_;
};

}  // namespace testsupport
