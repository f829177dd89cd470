#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "foa/fleet.hpp"
#include "foa/history.hpp"
#include "foa/rng.hpp"
#include "foa/trace.hpp"
#include "foa/value_service.hpp"

namespace foa {

enum class SchemeKind { linear, exponential, greedy, linear_filtered };

// Weighting scheme for the categorical resampling distribution.
//   linear          w = max(alpha*v + beta, 0)
//   exponential     w = exp(v / beta), beta > 0
//   greedy          w = 1 for the argmax (lowest index on ties), else 0
//   linear_filtered linear, but candidates valued strictly below the best
//                   current state get weight 0
struct ResamplingScheme {
  SchemeKind kind = SchemeKind::linear;
  double alpha = 1.0;
  double beta = 1.0;
};

const char* scheme_kind_name(SchemeKind kind);
std::optional<SchemeKind> scheme_kind_from_name(const std::string& name);

// A resampling candidate: a current or historical state with its raw value
// estimate and the age-discounted value the weights are computed on.
struct Candidate {
  State state;
  double raw_value = 0.0;
  int evaluated_at = 0;
  double discounted_value = 0.0;  // raw_value * gamma^(t_now - evaluated_at)
  bool current = false;
};

// Deduplicated union of the current fleet and the visited-state history.
// Current states come first, in fleet order; historical entries follow in
// insertion order with gamma-discounted values. Terminal non-solution
// states are excluded, as are historical states without a value estimate
// when known_values_only is set. gamma == 0 admits only current states.
// Precondition: every current state has a value in `history`.
std::vector<Candidate> build_candidate_pool(const FleetState& fleet, const StateHistory& history,
                                            const Environment& env, double gamma, int t_now,
                                            bool known_values_only);

// Non-negative resampling weights, one per candidate. All-zero weight
// vectors fall back to uniform so the categorical distribution stays
// defined.
std::vector<double> compute_weights(const std::vector<Candidate>& candidates,
                                    const ResamplingScheme& scheme);

// n i.i.d. draws from the normalized categorical distribution; duplicates
// are expected. `drawn` receives the chosen pool indices when given.
FleetState resample(const std::vector<Candidate>& candidates, const std::vector<double>& weights,
                    int n, int t_now, RngStream& rng, std::vector<int>* drawn = nullptr);

struct SelectionConfig {
  ResamplingScheme scheme;
  double gamma = 0.5;
  bool known_values_only = true;
};

// Full selection phase: evaluates current states through the value service
// (cache-aware), optionally fills in missing historical estimates, builds
// the pool, weights it, and resamples. Returns nullopt when the pool is
// empty (every candidate terminal).
std::optional<FleetState> selection_phase(const FleetState& fleet, const Environment& env,
                                          ValueService& values, StateHistory& history,
                                          const SelectionConfig& config, std::uint64_t seed,
                                          TraceWriter* trace);

}  // namespace foa
