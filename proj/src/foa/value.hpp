#pragma once

#include <string>
#include <vector>

#include "foa/batching.hpp"
#include "foa/env.hpp"
#include "foa/rational.hpp"

namespace foa {

enum class ValueSource { oracle, heuristic, backend, cache };

const char* value_source_name(ValueSource source);

// Numeric mapping for the categorical labels returned by value prompts
// ("sure"/"likely"/"impossible" for the arithmetic task, "sure"/"maybe"/
// "impossible" for crosswords). The numbers are configuration, not task
// ground truth.
struct LabelValueMap {
  double sure = 20.0;
  double likely = 1.0;
  double maybe = 1.0;
  double impossible = 0.001;
  double fallback = 0.0;
};

// Maps a label to its configured value; unrecognized labels yield the
// fallback and set *recognized to false.
double label_to_value(const std::string& label, const LabelValueMap& labels,
                      bool* recognized = nullptr);

// Extracts the label from a completion: last non-empty line, trimmed and
// lowercased, reduced to its final token when the line is a sentence.
std::string extract_label(const std::string& completion_text);

// Pluggable state evaluator. `stamps` gives the timestep each estimate is
// attributed to; warnings collect parse anomalies for the trace.
class ValueFn {
 public:
  virtual ~ValueFn() = default;
  virtual ValueSource source() const = 0;
  virtual std::vector<double> evaluate(const Environment& env, const std::vector<State>& states,
                                       int t_now, std::vector<std::string>* warnings) = 0;
};

// Exact reachability for the 24 puzzle: 1.0 iff some arithmetic combination
// of the remaining numbers (+, -, *, /, any parenthesization, each number
// used exactly once) reaches 24 exactly. Division-by-zero branches are
// skipped, never raised.
double oracle_value_24(const std::vector<Rational>& remaining);

class Oracle24Value : public ValueFn {
 public:
  ValueSource source() const override { return ValueSource::oracle; }
  std::vector<double> evaluate(const Environment& env, const std::vector<State>& states, int t_now,
                               std::vector<std::string>* warnings) override;
};

// Planted-path oracle for the synthetic tree environment.
class SyntheticTreeValue : public ValueFn {
 public:
  ValueSource source() const override { return ValueSource::oracle; }
  std::vector<double> evaluate(const Environment& env, const std::vector<State>& states, int t_now,
                               std::vector<std::string>* warnings) override;
};

// Scores states by the environment's own progress metric (e.g. crossword
// overlap against the ground truth). A test-friendly stand-in for tasks
// with no exact reachability oracle.
class ProgressValue : public ValueFn {
 public:
  ValueSource source() const override { return ValueSource::heuristic; }
  std::vector<double> evaluate(const Environment& env, const std::vector<State>& states, int t_now,
                               std::vector<std::string>* warnings) override;
};

enum class ValueAggregation { mean, sum };

// Completion-backed evaluator for the 24 puzzle: renders the value prompt
// per state, asks for `samples` outputs, and aggregates the mapped labels.
class Backend24Value : public ValueFn {
 public:
  Backend24Value(BatchExecutor& executor, LabelValueMap labels, int samples,
                 ValueAggregation aggregation)
      : executor_(executor), labels_(labels), samples_(samples), aggregation_(aggregation) {}

  ValueSource source() const override { return ValueSource::backend; }
  std::vector<double> evaluate(const Environment& env, const std::vector<State>& states, int t_now,
                               std::vector<std::string>* warnings) override;

 private:
  BatchExecutor& executor_;
  LabelValueMap labels_;
  int samples_;
  ValueAggregation aggregation_;
};

// Completion-backed evaluator for crosswords: the value prompt judges one
// slot at a time, so a board's value aggregates the per-slot labels over
// every slot with at least one letter.
class BackendCrosswordValue : public ValueFn {
 public:
  BackendCrosswordValue(BatchExecutor& executor, LabelValueMap labels,
                        ValueAggregation aggregation)
      : executor_(executor), labels_(labels), aggregation_(aggregation) {}

  ValueSource source() const override { return ValueSource::backend; }
  std::vector<double> evaluate(const Environment& env, const std::vector<State>& states, int t_now,
                               std::vector<std::string>* warnings) override;

 private:
  BatchExecutor& executor_;
  LabelValueMap labels_;
  ValueAggregation aggregation_;
};

}  // namespace foa
