#include "foa/policy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "foa/prompts.hpp"

namespace foa {

std::vector<std::optional<State>> Policy::propose_batch(const Environment& env,
                                                        const std::vector<State>& states,
                                                        std::vector<RngStream>& streams, int t) {
  (void)t;
  std::vector<std::optional<State>> proposals;
  proposals.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    proposals.push_back(propose(env, states[i], streams[i]));
  return proposals;
}

std::optional<State> EnumeratorPolicy::propose(const Environment& env, const State& state,
                                               RngStream& rng) {
  (void)rng;
  auto successors = env.propose_moves(state);
  if (successors.empty()) return std::nullopt;
  return successors.front();
}

SoftmaxPolicy::SoftmaxPolicy(ValueHint hint, double temperature)
    : hint_(std::move(hint)), temperature_(temperature) {
  if (temperature_ <= 0.0) throw std::invalid_argument("softmax temperature must be > 0");
}

std::optional<State> SoftmaxPolicy::propose(const Environment& env, const State& state,
                                            RngStream& rng) {
  auto successors = env.propose_moves(state);
  if (successors.empty()) return std::nullopt;

  std::vector<double> hints(successors.size(), 0.0);
  if (hint_) {
    for (std::size_t i = 0; i < successors.size(); ++i) hints[i] = hint_(env, successors[i]);
  }

  if (temperature_ < kArgmaxThreshold) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < hints.size(); ++i)
      if (hints[i] > hints[best]) best = i;
    return successors[best];
  }

  double max_hint = *std::max_element(hints.begin(), hints.end());
  std::vector<double> weights(hints.size());
  for (std::size_t i = 0; i < hints.size(); ++i)
    weights[i] = std::exp((hints[i] - max_hint) / temperature_);
  return successors[rng.categorical(weights)];
}

std::vector<PolicyProposal> parse_proposals(const Environment& env, const State& state,
                                            const std::string& output) {
  std::vector<PolicyProposal> proposals;
  std::istringstream in(output);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    PolicyProposal proposal;
    proposal.raw_text = line;
    auto successor = env.parse_action(state, line);
    // Enforced mutation: stationary proposals are illegal.
    if (successor && (*successor)->key() != state->key()) {
      proposal.successor = *successor;
      proposal.parse_ok = true;
    }
    proposals.push_back(std::move(proposal));
  }
  return proposals;
}

std::vector<State> BackendPolicy::legal_proposals(const Environment& env, const State& state,
                                                  const std::string& output) const {
  std::vector<State> legal;
  std::unordered_set<std::string> seen;
  for (const auto& proposal : parse_proposals(env, state, output)) {
    if (!proposal.parse_ok) continue;
    if (!seen.insert(proposal.successor->key()).second) continue;
    legal.push_back(proposal.successor);
  }
  return legal;
}

std::optional<State> BackendPolicy::propose(const Environment& env, const State& state,
                                            RngStream& rng) {
  std::vector<State> states{state};
  std::vector<RngStream> streams{rng};
  auto proposals = propose_batch(env, states, streams, 0);
  rng = streams[0];
  return proposals[0];
}

std::vector<std::optional<State>> BackendPolicy::propose_batch(const Environment& env,
                                                               const std::vector<State>& states,
                                                               std::vector<RngStream>& streams,
                                                               int t) {
  std::vector<std::optional<State>> proposals(states.size());
  std::vector<std::size_t> open(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) open[i] = i;

  for (int attempt = 0; attempt <= max_retries_ && !open.empty(); ++attempt) {
    std::vector<std::string> prompts;
    prompts.reserve(open.size());
    for (auto i : open)
      prompts.push_back(render_prompt(template_, env.prompt_input(states[i])));

    auto outputs = executor_.complete_all(prompts, t);

    std::vector<std::size_t> still_open;
    for (std::size_t p = 0; p < open.size(); ++p) {
      std::size_t i = open[p];
      auto legal = legal_proposals(env, states[i], outputs[p]);
      if (legal.empty()) {
        still_open.push_back(i);
        continue;
      }
      // The model's distribution over its own parsed moves: uniform.
      proposals[i] = legal[streams[i].next_index(legal.size())];
    }
    open = std::move(still_open);
  }
  return proposals;  // agents still open stay nullopt: terminal signal
}

}  // namespace foa
