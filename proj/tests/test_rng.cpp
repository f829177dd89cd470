#include "doctest.h"

#include <cmath>
#include <vector>

#include "foa/rng.hpp"

using foa::RngStream;

TEST_CASE("equal seeds replay the same sequence") {
  RngStream a(1234), b(1234);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("substreams differ across agents and timesteps") {
  auto a0 = RngStream::for_agent(7, 0, 3).next_u64();
  auto a1 = RngStream::for_agent(7, 1, 3).next_u64();
  auto a0_t4 = RngStream::for_agent(7, 0, 4).next_u64();
  CHECK(a0 != a1);
  CHECK(a0 != a0_t4);
  CHECK(RngStream::for_phase(7, 3, 1).next_u64() != RngStream::for_phase(7, 3, 2).next_u64());
}

TEST_CASE("next_double lies in [0,1) and is roughly uniform") {
  RngStream stream(99);
  double sum = 0;
  for (int i = 0; i < 20000; ++i) {
    double x = stream.next_double();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    sum += x;
  }
  CHECK(std::abs(sum / 20000 - 0.5) < 0.01);
}

TEST_CASE("next_index stays in range and covers all buckets") {
  RngStream stream(5);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    auto idx = stream.next_index(7);
    REQUIRE(idx < 7);
    counts[idx]++;
  }
  for (int c : counts) CHECK(c > 8500);
}

TEST_CASE("categorical respects zero-weight buckets") {
  RngStream stream(11);
  std::vector<double> weights = {0.0, 1.0, 0.0};
  for (int i = 0; i < 1000; ++i) CHECK(stream.categorical(weights) == 1);
}

TEST_CASE("gaussian has roughly zero mean and unit variance") {
  RngStream stream(17);
  double sum = 0, sq = 0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    double g = foa::next_gaussian(stream);
    sum += g;
    sq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sq / n - 1.0) < 0.05);
}
