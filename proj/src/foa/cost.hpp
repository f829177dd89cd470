#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace foa {

struct TokenUsage {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
};

struct ModelPrice {
  double usd_per_1m_prompt = 0.0;
  double usd_per_1m_completion = 0.0;
};

using PriceTable = std::map<std::string, ModelPrice>;

// Prices for the model snapshots used by the experiments, USD per million
// prompt/completion tokens.
PriceTable default_price_table();

// Accumulated token counts per model with USD conversion. Totals are
// non-decreasing; recording against a model missing from the price table is
// a configuration error.
class CostLedger {
 public:
  CostLedger() : prices_(default_price_table()) {}
  explicit CostLedger(PriceTable prices) : prices_(std::move(prices)) {}

  // Throws std::invalid_argument for an unknown model.
  void record(const std::string& model, std::int64_t prompt_tokens,
              std::int64_t completion_tokens);

  double total_usd() const;
  const std::map<std::string, TokenUsage>& per_model() const { return usage_; }
  const PriceTable& prices() const { return prices_; }

 private:
  std::map<std::string, TokenUsage> usage_;
  PriceTable prices_;
};

}  // namespace foa
