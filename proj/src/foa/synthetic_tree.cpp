#include "foa/synthetic_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "foa/rng.hpp"

namespace foa {

std::string SyntheticTreeState::key() const {
  std::string k = "tree:";
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) k += ".";
    k += std::to_string(path[i]);
  }
  return k;
}

nlohmann::json SyntheticTreeState::to_json() const {
  nlohmann::json j;
  j["path"] = path;
  return j;
}

SyntheticTreeEnv::SyntheticTreeEnv(std::uint64_t seed, int branching, int depth,
                                   double noise_sigma)
    : seed_(seed), branching_(branching), depth_(depth), noise_sigma_(noise_sigma) {
  if (branching < 2) throw std::invalid_argument("synthetic tree requires branching >= 2");
  if (depth < 1) throw std::invalid_argument("synthetic tree requires depth >= 1");
  if (noise_sigma < 0) throw std::invalid_argument("synthetic tree requires noise_sigma >= 0");
  RngStream stream(seed ^ 0x5eedf00d);
  for (int level = 0; level < depth; ++level)
    planted_path_.push_back(static_cast<int>(stream.next_index(branching_)));
}

State SyntheticTreeEnv::initial_state() const { return std::make_shared<SyntheticTreeState>(); }

std::vector<State> SyntheticTreeEnv::propose_moves(const State& state) const {
  const auto& s = static_cast<const SyntheticTreeState&>(*state);
  if (static_cast<int>(s.path.size()) >= depth_) return {};
  std::vector<State> children;
  children.reserve(branching_);
  for (int c = 0; c < branching_; ++c) {
    auto child = std::make_shared<SyntheticTreeState>(s);
    child->path.push_back(c);
    children.push_back(child);
  }
  return children;
}

bool SyntheticTreeEnv::is_solution(const State& state) const {
  const auto& s = static_cast<const SyntheticTreeState&>(*state);
  return s.path == planted_path_;
}

bool SyntheticTreeEnv::is_terminal(const State& state) const {
  const auto& s = static_cast<const SyntheticTreeState&>(*state);
  return static_cast<int>(s.path.size()) >= depth_ && !is_solution(state);
}

std::string SyntheticTreeEnv::prompt_input(const State& state) const { return state->key(); }

double SyntheticTreeEnv::oracle_value(const State& state) const {
  const auto& s = static_cast<const SyntheticTreeState&>(*state);
  size_t common = 0;
  while (common < s.path.size() && common < planted_path_.size() &&
         s.path[common] == planted_path_[common])
    ++common;
  size_t off = s.path.size() - common;
  double value = off == 0 ? 1.0 : std::pow(0.5, static_cast<double>(off));
  if (is_terminal(state)) return 0.0;
  if (noise_sigma_ > 0.0) {
    // Noise is a fixed function of the state so caching stays coherent.
    RngStream stream(fnv1a64(state->key()) ^ seed_);
    value += noise_sigma_ * next_gaussian(stream);
  }
  return std::max(0.0, value);
}

}  // namespace foa
