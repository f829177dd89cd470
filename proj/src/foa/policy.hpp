#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "foa/batching.hpp"
#include "foa/env.hpp"
#include "foa/rng.hpp"

namespace foa {

// One parsed line of model output. parse_ok is true iff the line named a
// legal, non-stationary move of the source state, in which case successor
// holds the resulting state.
struct PolicyProposal {
  State successor;       // null unless parse_ok
  std::string raw_text;  // the originating line; empty for synthetic policies
  bool parse_ok = false;
};

// Parses each line of `output` against the environment's legal move set.
std::vector<PolicyProposal> parse_proposals(const Environment& env, const State& state,
                                            const std::string& output);

// Agent policy pi(s'|s). A proposal of nullopt is the terminal signal: no
// viable successor exists (or none could be obtained). Policies are
// stateless between calls; all randomness comes from the caller's streams.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::optional<State> propose(const Environment& env, const State& state,
                                       RngStream& rng) = 0;

  // One proposal per input state; `t` is the timestep being taken, used
  // for trace attribution. The default loops over propose(); backend-based
  // policies override it to collect prompts and batch duplicates into
  // multi-output requests.
  virtual std::vector<std::optional<State>> propose_batch(const Environment& env,
                                                          const std::vector<State>& states,
                                                          std::vector<RngStream>& streams, int t);
};

// Deterministic stand-in for a model: the first legal successor under the
// environment's canonical move ordering.
class EnumeratorPolicy : public Policy {
 public:
  std::optional<State> propose(const Environment& env, const State& state,
                               RngStream& rng) override;
};

using ValueHint = std::function<double(const Environment&, const State&)>;

// Seeded stochastic policy: samples a successor with probability
// proportional to exp(hint(s')/temperature). With no hint every legal move
// is equally likely. Temperatures below kArgmaxThreshold select the
// highest-hint successor outright (lowest index on ties).
class SoftmaxPolicy : public Policy {
 public:
  static constexpr double kArgmaxThreshold = 1e-6;

  explicit SoftmaxPolicy(ValueHint hint = nullptr, double temperature = 1.0);

  std::optional<State> propose(const Environment& env, const State& state,
                               RngStream& rng) override;

 private:
  ValueHint hint_;
  double temperature_;
};

// Completion-backed policy: renders the task's step prompt, parses each
// output line against the environment's legal move set, and samples
// uniformly among the legal proposals. Outputs that yield no legal
// proposal consume one retry; when the retry budget is exhausted the agent
// is marked terminal.
class BackendPolicy : public Policy {
 public:
  BackendPolicy(BatchExecutor& executor, std::string step_prompt_template, int max_retries = 2)
      : executor_(executor),
        template_(std::move(step_prompt_template)),
        max_retries_(max_retries) {}

  std::optional<State> propose(const Environment& env, const State& state,
                               RngStream& rng) override;
  std::vector<std::optional<State>> propose_batch(const Environment& env,
                                                  const std::vector<State>& states,
                                                  std::vector<RngStream>& streams, int t) override;

 private:
  std::vector<State> legal_proposals(const Environment& env, const State& state,
                                     const std::string& output) const;

  BatchExecutor& executor_;
  std::string template_;
  int max_retries_;
};

}  // namespace foa
