#include "foa/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace foa {
namespace {

constexpr std::uint64_t kSelectTag = 0x73656c65;

}  // namespace

const char* scheme_kind_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::linear: return "linear";
    case SchemeKind::exponential: return "exponential";
    case SchemeKind::greedy: return "greedy";
    case SchemeKind::linear_filtered: return "linear_filtered";
  }
  return "unknown";
}

std::optional<SchemeKind> scheme_kind_from_name(const std::string& name) {
  if (name == "linear") return SchemeKind::linear;
  if (name == "exponential") return SchemeKind::exponential;
  if (name == "greedy") return SchemeKind::greedy;
  if (name == "linear_filtered") return SchemeKind::linear_filtered;
  return std::nullopt;
}

std::vector<Candidate> build_candidate_pool(const FleetState& fleet, const StateHistory& history,
                                            const Environment& env, double gamma, int t_now,
                                            bool known_values_only) {
  std::vector<Candidate> pool;
  std::unordered_set<std::string> seen;

  for (const auto& agent : fleet.agents) {
    const std::string key = agent.payload->key();
    if (!seen.insert(key).second) continue;
    if (env.is_terminal(agent.payload) && !env.is_solution(agent.payload)) continue;
    const auto* entry = history.find(key);
    if (!entry || !entry->value)
      throw std::logic_error("current state has no value estimate: " + key);
    Candidate c;
    c.state = agent.payload;
    c.raw_value = *entry->value;
    c.evaluated_at = entry->evaluated_at;
    c.discounted_value = c.raw_value * std::pow(gamma, t_now - entry->evaluated_at);
    c.current = true;
    pool.push_back(std::move(c));
  }

  // Backtracking: past states join the pool with age-discounted values.
  // gamma == 0 forbids resampling from the past entirely.
  if (gamma > 0.0) {
    for (const auto& entry : history.entries()) {
      const std::string key = entry.state->key();
      if (seen.count(key)) continue;
      if (env.is_terminal(entry.state) && !env.is_solution(entry.state)) continue;
      if (!entry.value) {
        if (known_values_only) continue;
        throw std::logic_error("pool candidate lacks a value estimate: " + key);
      }
      seen.insert(key);
      Candidate c;
      c.state = entry.state;
      c.raw_value = *entry.value;
      c.evaluated_at = entry.evaluated_at;
      c.discounted_value = c.raw_value * std::pow(gamma, t_now - entry.evaluated_at);
      c.current = false;
      pool.push_back(std::move(c));
    }
  }
  return pool;
}

std::vector<double> compute_weights(const std::vector<Candidate>& candidates,
                                    const ResamplingScheme& scheme) {
  if (candidates.empty()) throw std::invalid_argument("compute_weights on empty pool");
  std::vector<double> weights(candidates.size(), 0.0);

  switch (scheme.kind) {
    case SchemeKind::linear:
      for (std::size_t i = 0; i < candidates.size(); ++i)
        weights[i] = std::max(scheme.alpha * candidates[i].discounted_value + scheme.beta, 0.0);
      break;
    case SchemeKind::exponential: {
      if (scheme.beta <= 0.0)
        throw std::invalid_argument("exponential scheme requires beta > 0");
      for (std::size_t i = 0; i < candidates.size(); ++i)
        weights[i] = std::exp(candidates[i].discounted_value / scheme.beta);
      break;
    }
    case SchemeKind::greedy: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < candidates.size(); ++i)
        if (candidates[i].discounted_value > candidates[best].discounted_value) best = i;
      weights[best] = 1.0;
      break;
    }
    case SchemeKind::linear_filtered: {
      // Only states valued at or above the best current state survive.
      double best_current = 0.0;
      bool has_current = false;
      for (const auto& c : candidates) {
        if (c.current) {
          best_current = has_current ? std::max(best_current, c.discounted_value)
                                     : c.discounted_value;
          has_current = true;
        }
      }
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (has_current && candidates[i].discounted_value < best_current) continue;
        weights[i] = std::max(scheme.alpha * candidates[i].discounted_value + scheme.beta, 0.0);
      }
      break;
    }
  }

  bool any_positive = std::any_of(weights.begin(), weights.end(), [](double w) { return w > 0; });
  if (!any_positive) std::fill(weights.begin(), weights.end(), 1.0);
  return weights;
}

FleetState resample(const std::vector<Candidate>& candidates, const std::vector<double>& weights,
                    int n, int t_now, RngStream& rng, std::vector<int>* drawn) {
  if (candidates.size() != weights.size())
    throw std::invalid_argument("resample: weights/candidates length mismatch");
  FleetState fleet;
  fleet.t = t_now;
  fleet.agents.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::size_t pick = rng.categorical(weights);
    if (drawn) drawn->push_back(static_cast<int>(pick));
    fleet.agents.push_back(AgentState{candidates[pick].state, i, t_now});
  }
  return fleet;
}

std::optional<FleetState> selection_phase(const FleetState& fleet, const Environment& env,
                                          ValueService& values, StateHistory& history,
                                          const SelectionConfig& config, std::uint64_t seed,
                                          TraceWriter* trace) {
  const int t_now = fleet.t;

  std::vector<State> current;
  current.reserve(fleet.agents.size());
  for (const auto& agent : fleet.agents) current.push_back(agent.payload);
  values.evaluate_batch(env, current, t_now, &history, trace);

  // Without the known-values restriction, visited states missing an
  // estimate are evaluated now, attributed to their last visit so the
  // discount still measures age.
  if (!config.known_values_only && config.gamma > 0.0) {
    std::vector<State> pending;
    std::vector<int> stamps;
    for (const auto& entry : history.entries()) {
      if (entry.value) continue;
      if (env.is_terminal(entry.state) && !env.is_solution(entry.state)) continue;
      pending.push_back(entry.state);
      stamps.push_back(entry.last_visited);
    }
    if (!pending.empty()) values.evaluate_batch(env, pending, stamps, t_now, &history, trace);
  }

  auto pool = build_candidate_pool(fleet, history, env, config.gamma, t_now,
                                   config.known_values_only);
  if (pool.empty()) return std::nullopt;

  auto weights = compute_weights(pool, config.scheme);

  if (trace) {
    double total = 0.0;
    for (double w : weights) total += w;
    nlohmann::json pool_json = nlohmann::json::array();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      pool_json.push_back({{"key", pool[i].state->key()},
                           {"raw", pool[i].raw_value},
                           {"discounted", pool[i].discounted_value},
                           {"current", pool[i].current},
                           {"weight", weights[i] / total}});
    }
    trace->emit(t_now, "select",
                {{"pool_size", pool.size()},
                 {"scheme", scheme_kind_name(config.scheme.kind)},
                 {"gamma", config.gamma},
                 {"pool", std::move(pool_json)}});
  }

  RngStream rng = RngStream::for_phase(seed, t_now, kSelectTag);
  std::vector<int> drawn;
  FleetState next = resample(pool, weights, fleet.n(), t_now, rng, &drawn);
  for (const auto& agent : next.agents) history.record_visit(agent.payload, t_now);
  if (trace) trace->emit(t_now, "resample_draw", {{"indices", drawn}});
  return next;
}

}  // namespace foa
