#include "foa/game24.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace foa {
namespace {

const Rational kTarget = Rational::from_int(24);

struct Move {
  Rational a;
  Rational b;
  char op;        // '+', '-', '*', '/'
  Rational result;
};

std::string render_move(const Move& m, const std::vector<Rational>& left) {
  std::string line = m.a.str();
  line += ' ';
  line += m.op;
  line += ' ';
  line += m.b.str();
  line += " = ";
  line += m.result.str();
  line += " (left: ";
  line += join_rationals(left);
  line += ")";
  return line;
}

// Remaining numbers after consuming {a, b} and producing `result`.
std::optional<std::vector<Rational>> apply_to_multiset(const std::vector<Rational>& remaining,
                                                       const Rational& a, const Rational& b,
                                                       const Rational& result) {
  std::vector<Rational> next = remaining;
  auto it = std::find(next.begin(), next.end(), a);
  if (it == next.end()) return std::nullopt;
  next.erase(it);
  it = std::find(next.begin(), next.end(), b);
  if (it == next.end()) return std::nullopt;
  next.erase(it);
  next.push_back(result);
  std::sort(next.begin(), next.end());
  return next;
}

std::optional<Rational> eval_op(const Rational& a, char op, const Rational& b) {
  switch (op) {
    case '+': return a + b;
    case '-': return a - b;
    case '*': return a * b;
    case '/':
      if (b.is_zero()) return std::nullopt;
      return a / b;
    default: return std::nullopt;
  }
}

struct ParsedLine {
  Rational a;
  char op;
  Rational b;
  Rational c;
  std::vector<Rational> left;
};

// "a op b = c (left: n1 n2 ...)"
std::optional<ParsedLine> parse_line(const std::string& line) {
  std::string text = line;
  auto lparen = text.find("(left:");
  if (lparen == std::string::npos) return std::nullopt;
  auto rparen = text.find(')', lparen);
  if (rparen == std::string::npos) return std::nullopt;
  std::string left_part = text.substr(lparen + 6, rparen - lparen - 6);
  std::string expr = text.substr(0, lparen);

  auto eq = expr.find('=');
  if (eq == std::string::npos) return std::nullopt;
  std::string lhs = expr.substr(0, eq);
  std::string rhs = expr.substr(eq + 1);

  std::istringstream lhs_in(lhs);
  std::string a_tok, op_tok, b_tok;
  if (!(lhs_in >> a_tok >> op_tok >> b_tok)) return std::nullopt;
  std::string extra;
  if (lhs_in >> extra) return std::nullopt;
  if (op_tok.size() != 1 || std::string("+-*/").find(op_tok[0]) == std::string::npos)
    return std::nullopt;

  std::istringstream rhs_in(rhs);
  std::string c_tok;
  if (!(rhs_in >> c_tok)) return std::nullopt;
  if (rhs_in >> extra) return std::nullopt;

  ParsedLine parsed;
  auto a = Rational::parse(a_tok);
  auto b = Rational::parse(b_tok);
  auto c = Rational::parse(c_tok);
  if (!a || !b || !c) return std::nullopt;
  parsed.a = *a;
  parsed.b = *b;
  parsed.c = *c;
  parsed.op = op_tok[0];

  std::istringstream left_in(left_part);
  std::string tok;
  while (left_in >> tok) {
    auto v = Rational::parse(tok);
    if (!v) return std::nullopt;
    parsed.left.push_back(*v);
  }
  std::sort(parsed.left.begin(), parsed.left.end());
  return parsed;
}

Game24StatePtr make_successor(const Game24State& state, const Move& move,
                              std::vector<Rational> next_remaining) {
  auto next = std::make_shared<Game24State>();
  next->remaining = std::move(next_remaining);
  next->steps_log = state.steps_log;
  next->steps_log.push_back(render_move(move, next->remaining));
  next->puzzle = state.puzzle;
  return next;
}

}  // namespace

std::string Game24State::key() const {
  std::string k = "24:";
  k += join_rationals(remaining);
  k += "|";
  for (size_t i = 0; i < steps_log.size(); ++i) {
    if (i) k += ";";
    k += steps_log[i];
  }
  return k;
}

nlohmann::json Game24State::to_json() const {
  nlohmann::json j;
  j["remaining"] = join_rationals(remaining);
  j["steps"] = steps_log;
  j["puzzle"] = puzzle;
  return j;
}

std::vector<Game24StatePtr> propose_moves_24(const Game24State& state) {
  if (state.remaining.size() < 2)
    throw std::invalid_argument("propose_moves_24 requires at least two numbers");

  std::vector<Game24StatePtr> successors;
  std::unordered_set<std::string> seen;
  const auto& nums = state.remaining;
  for (size_t i = 0; i < nums.size(); ++i) {
    for (size_t j = i + 1; j < nums.size(); ++j) {
      const Rational& a = nums[i];
      const Rational& b = nums[j];
      const Move candidates[] = {
          {a, b, '+', a + b},
          {a, b, '-', a - b},
          {b, a, '-', b - a},
          {a, b, '*', a * b},
          {a, b, '/', b.is_zero() ? Rational() : a / b},
          {b, a, '/', a.is_zero() ? Rational() : b / a},
      };
      for (size_t m = 0; m < 6; ++m) {
        if (m == 4 && b.is_zero()) continue;
        if (m == 5 && a.is_zero()) continue;
        auto next = apply_to_multiset(nums, a, b, candidates[m].result);
        if (!next) continue;
        std::string sig = join_rationals(*next);
        if (!seen.insert(sig).second) continue;
        successors.push_back(make_successor(state, candidates[m], std::move(*next)));
      }
    }
  }
  return successors;
}

bool is_solution_24(const Game24State& state) {
  if (state.remaining.size() != 1 || state.remaining[0] != kTarget) return false;

  // Replay the log from the puzzle; every step must consume two numbers
  // present at that point and be arithmetically exact.
  std::vector<Rational> nums;
  nums.reserve(state.puzzle.size());
  for (auto v : state.puzzle) nums.push_back(Rational::from_int(v));
  std::sort(nums.begin(), nums.end());

  for (const auto& line : state.steps_log) {
    auto parsed = parse_line(line);
    if (!parsed) return false;
    auto result = eval_op(parsed->a, parsed->op, parsed->b);
    if (!result || *result != parsed->c) return false;
    auto next = apply_to_multiset(nums, parsed->a, parsed->b, parsed->c);
    if (!next) return false;
    nums = std::move(*next);
  }
  return nums.size() == 1 && nums[0] == kTarget;
}

std::string render_answer_24(const Game24State& state) {
  // Fold the log into one expression: every value slot carries the
  // expression that produced it, literals to begin with.
  std::vector<std::pair<Rational, std::string>> exprs;
  for (auto v : state.puzzle)
    exprs.emplace_back(Rational::from_int(v), std::to_string(v));

  auto take = [&exprs](const Rational& v) -> std::optional<std::string> {
    for (size_t i = 0; i < exprs.size(); ++i) {
      if (exprs[i].first == v) {
        std::string e = exprs[i].second;
        exprs.erase(exprs.begin() + i);
        return e;
      }
    }
    return std::nullopt;
  };

  for (const auto& line : state.steps_log) {
    auto parsed = parse_line(line);
    if (!parsed) throw std::invalid_argument("render_answer_24: malformed step: " + line);
    auto ea = take(parsed->a);
    auto eb = take(parsed->b);
    if (!ea || !eb) throw std::invalid_argument("render_answer_24: unreplayable step: " + line);
    std::string combined = "(" + *ea + " " + parsed->op + " " + *eb + ")";
    exprs.emplace_back(parsed->c, combined);
  }
  if (exprs.size() != 1) throw std::invalid_argument("render_answer_24: log does not fold");

  std::string expr = exprs[0].second;
  if (expr.size() >= 2 && expr.front() == '(' && expr.back() == ')')
    expr = expr.substr(1, expr.size() - 2);
  return expr + " = 24";
}

std::optional<Game24StatePtr> parse_move_24(const Game24State& state, const std::string& line) {
  auto parsed = parse_line(line);
  if (!parsed) return std::nullopt;
  auto result = eval_op(parsed->a, parsed->op, parsed->b);
  if (!result || *result != parsed->c) return std::nullopt;
  auto next = apply_to_multiset(state.remaining, parsed->a, parsed->b, parsed->c);
  if (!next) return std::nullopt;
  if (*next != parsed->left) return std::nullopt;

  Move move{parsed->a, parsed->b, parsed->op, parsed->c};
  return make_successor(state, move, std::move(*next));
}

Game24Env::Game24Env(const std::string& puzzle) {
  std::istringstream in(puzzle);
  std::int64_t v;
  while (in >> v) puzzle_.push_back(v);
  if (puzzle_.empty()) throw std::invalid_argument("game24 puzzle has no numbers: " + puzzle);
}

State Game24Env::initial_state() const {
  auto s = std::make_shared<Game24State>();
  s->puzzle = puzzle_;
  for (auto v : puzzle_) s->remaining.push_back(Rational::from_int(v));
  std::sort(s->remaining.begin(), s->remaining.end());
  return s;
}

std::vector<State> Game24Env::propose_moves(const State& state) const {
  const auto& s = static_cast<const Game24State&>(*state);
  if (s.remaining.size() < 2) return {};
  auto successors = propose_moves_24(s);
  return std::vector<State>(successors.begin(), successors.end());
}

bool Game24Env::is_solution(const State& state) const {
  return is_solution_24(static_cast<const Game24State&>(*state));
}

bool Game24Env::is_terminal(const State& state) const {
  const auto& s = static_cast<const Game24State&>(*state);
  return s.remaining.size() == 1 && !is_solution_24(s);
}

std::string Game24Env::value_key(const State& state) const {
  // The value prompt conditions only on the remaining numbers, so states
  // differing only in derivation share one evaluation.
  return join_rationals(static_cast<const Game24State&>(*state).remaining);
}

std::string Game24Env::prompt_input(const State& state) const {
  return join_rationals(static_cast<const Game24State&>(*state).remaining);
}

std::optional<State> Game24Env::parse_action(const State& state, const std::string& line) const {
  auto next = parse_move_24(static_cast<const Game24State&>(*state), line);
  if (!next) return std::nullopt;
  return *next;
}

std::string Game24Env::solution_payload(const State& state) const {
  const auto& s = static_cast<const Game24State&>(*state);
  if (is_solution_24(s)) return render_answer_24(s);
  return s.key();
}

}  // namespace foa
