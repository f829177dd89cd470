#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "foa/env.hpp"

namespace foa {

// Controlled testbed for resampling and backtracking properties: a uniform
// tree with one planted solution leaf. On-path node values are 1, off-path
// values decay with distance from the planted path, and an optional
// state-keyed Gaussian noise term perturbs every value deterministically.
struct SyntheticTreeState : StateBase {
  std::vector<int> path;  // child indices from the root

  std::string key() const override;
  nlohmann::json to_json() const override;
};

class SyntheticTreeEnv : public Environment {
 public:
  SyntheticTreeEnv(std::uint64_t seed, int branching, int depth, double noise_sigma);

  std::string name() const override { return "synthetic_tree"; }
  State initial_state() const override;
  std::vector<State> propose_moves(const State& state) const override;
  bool is_solution(const State& state) const override;
  bool is_terminal(const State& state) const override;
  bool stop_on_first_solution() const override { return true; }
  std::string prompt_input(const State& state) const override;

  // Planted-path value with deterministic per-state noise, clamped at 0.
  double oracle_value(const State& state) const;

  int branching() const { return branching_; }
  int depth() const { return depth_; }
  const std::vector<int>& planted_path() const { return planted_path_; }

 private:
  std::uint64_t seed_;
  int branching_;
  int depth_;
  double noise_sigma_;
  std::vector<int> planted_path_;
};

}  // namespace foa
