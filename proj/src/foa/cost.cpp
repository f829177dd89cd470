#include "foa/cost.hpp"

#include <stdexcept>

namespace foa {

PriceTable default_price_table() {
  return {
      {"gpt-3.5-turbo-0125", {0.5, 1.5}},
      {"gpt-4-0613", {30.0, 60.0}},
      {"meta-llama/Llama-3.2-90B-Vision-Instruct-Turbo", {1.2, 0.06}},
      {"meta-llama/Llama-3.2-11B-Vision-Instruct-Turbo", {0.18, 0.18}},
  };
}

void CostLedger::record(const std::string& model, std::int64_t prompt_tokens,
                        std::int64_t completion_tokens) {
  if (prices_.find(model) == prices_.end())
    throw std::invalid_argument("no price entry for model: " + model);
  if (prompt_tokens < 0 || completion_tokens < 0)
    throw std::invalid_argument("negative token count");
  auto& usage = usage_[model];
  usage.prompt_tokens += prompt_tokens;
  usage.completion_tokens += completion_tokens;
}

double CostLedger::total_usd() const {
  double total = 0.0;
  for (const auto& [model, usage] : usage_) {
    const auto& price = prices_.at(model);
    total += usage.prompt_tokens / 1e6 * price.usd_per_1m_prompt;
    total += usage.completion_tokens / 1e6 * price.usd_per_1m_completion;
  }
  return total;
}

}  // namespace foa
