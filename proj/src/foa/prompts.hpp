#pragma once

#include <string>

namespace foa {

// Completion-prompt templates, reproduced verbatim with a single `{input}`
// substitution slot each.
extern const char* const kGame24StepPrompt;
extern const char* const kGame24LastStepPrompt;
extern const char* const kGame24ValuePrompt;
extern const char* const kCrosswordsStepPrompt;
extern const char* const kCrosswordsValuePrompt;

// Replaces the {input} slot. Throws if the template has none.
std::string render_prompt(const std::string& template_text, const std::string& input);

}  // namespace foa
