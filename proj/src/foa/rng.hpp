#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace foa {

// Counter-free splitmix64 stream. All randomness in a run flows through
// these streams; substreams are derived deterministically from
// (seed, agent_index, timestep) or from (seed, timestep, phase tag), so
// results never depend on scheduling or call interleaving.
//
// std::uniform_*_distribution is implementation-defined, hence the
// hand-rolled draws below: traces must be byte-identical across builds.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  static RngStream for_agent(std::uint64_t seed, int agent_index, int t);
  static RngStream for_phase(std::uint64_t seed, int t, std::uint64_t tag);

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53-bit resolution.
  double next_double();

  // Uniform in [0, n). Precondition: n >= 1.
  std::size_t next_index(std::size_t n);

  // Draws an index from the categorical distribution proportional to
  // `weights`. Precondition: at least one weight > 0.
  std::size_t categorical(std::span<const double> weights);

 private:
  std::uint64_t state_;
};

// Standard normal via Box-Muller on two stream draws.
double next_gaussian(RngStream& stream);

// Stable 64-bit content hash (FNV-1a); used for state-derived noise and
// trace hashing.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace foa
