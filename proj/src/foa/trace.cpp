#include "foa/trace.hpp"

#include <iomanip>

namespace foa {

void TraceWriter::emit(int t, const std::string& kind, nlohmann::json payload) {
  nlohmann::json event;
  event["v"] = kSchemaVersion;
  event["t"] = t;
  event["seq"] = seq_++;
  event["kind"] = kind;
  event["payload"] = std::move(payload);
  std::string line = event.dump();
  line += '\n';
  for (unsigned char c : line) {
    hash_ ^= c;
    hash_ *= 1099511628211ull;
  }
  if (sink_) *sink_ << line;
}

std::string TraceWriter::hash_hex() const {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash_;
  return out.str();
}

}  // namespace foa
