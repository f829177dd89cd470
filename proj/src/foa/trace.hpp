#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace foa {

// Line-delimited JSON trace, one event per line. Events are strictly
// ordered by (t, seq); every run ends with exactly one `done`. The writer
// folds every emitted byte into a running FNV-1a hash so a trace can be
// compared without re-reading the file.
class TraceWriter {
 public:
  static constexpr int kSchemaVersion = 1;

  TraceWriter() = default;
  explicit TraceWriter(std::ostream* sink) : sink_(sink) {}

  void emit(int t, const std::string& kind, nlohmann::json payload);

  std::uint64_t hash() const { return hash_; }
  std::uint64_t events_emitted() const { return seq_; }
  std::string hash_hex() const;

 private:
  std::ostream* sink_ = nullptr;
  std::uint64_t seq_ = 0;
  std::uint64_t hash_ = 1469598103934665603ull;
};

}  // namespace foa
