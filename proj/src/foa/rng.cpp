#include "foa/rng.hpp"

#include <cmath>
#include <string_view>

namespace foa {
namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix_step(std::uint64_t& state) {
  std::uint64_t z = (state += kGamma);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t s = seed;
  s ^= splitmix_step(s) + a;
  s ^= splitmix_step(s) + b;
  s ^= splitmix_step(s) + c;
  return s;
}

}  // namespace

RngStream RngStream::for_agent(std::uint64_t seed, int agent_index, int t) {
  return RngStream(derive(seed, 0x61, static_cast<std::uint64_t>(agent_index) + 1,
                          static_cast<std::uint64_t>(t) + 1));
}

RngStream RngStream::for_phase(std::uint64_t seed, int t, std::uint64_t tag) {
  return RngStream(derive(seed, 0x70, static_cast<std::uint64_t>(t) + 1, tag + 1));
}

std::uint64_t RngStream::next_u64() { return splitmix_step(state_); }

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t RngStream::next_index(std::size_t n) {
  // Multiply-shift map of a 64-bit draw onto [0, n); bias is < 2^-53 for
  // the fleet sizes involved.
  unsigned __int128 wide = static_cast<unsigned __int128>(next_u64());
  return static_cast<std::size_t>((wide * n) >> 64);
}

std::size_t RngStream::categorical(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double x = next_double() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (x < acc) return i;
  }
  // Rounding can push x past the last positive bucket; return it.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return weights.size() - 1;
}

double next_gaussian(RngStream& stream) {
  double u1 = stream.next_double();
  double u2 = stream.next_double();
  while (u1 <= 0.0) u1 = stream.next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

}  // namespace foa
