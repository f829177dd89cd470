#include "doctest.h"

#include "foa/history.hpp"
#include "test_support.hpp"

using namespace foa;

TEST_CASE("history is append-only and keyed by canonical serialization") {
  StateHistory history;
  auto a = testsupport::make_state({1, 2, 3, 4});
  auto b = testsupport::make_state({5, 5, 5, 9});
  history.record_visit(a, 0);
  history.record_visit(b, 1);
  history.record_visit(a, 2);  // re-visit refreshes last_visited only
  REQUIRE(history.size() == 2);
  CHECK(history.entries()[0].first_visited == 0);
  CHECK(history.entries()[0].last_visited == 2);
  CHECK_FALSE(history.entries()[0].value.has_value());
}

TEST_CASE("a re-visited state keeps its most recent value estimate") {
  StateHistory history;
  auto a = testsupport::make_state({1, 2, 3, 4});
  history.record_value(a, 0.8, 1);
  CHECK(*history.find(a->key())->value == 0.8);
  CHECK(history.find(a->key())->evaluated_at == 1);
  history.record_value(a, 0.3, 5);
  REQUIRE(history.size() == 1);
  CHECK(*history.find(a->key())->value == 0.3);
  CHECK(history.find(a->key())->evaluated_at == 5);
}

TEST_CASE("find returns null for unknown keys") {
  StateHistory history;
  CHECK(history.find("nope") == nullptr);
}
