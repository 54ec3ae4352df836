// Built-in scenario presets: the five clear-weather trials, the five
// severe-weather rows, the four-site evaluation, and a low-altitude start
// that skips straight to the approach.
#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace autoglide::harness {

std::vector<std::string> preset_names();
bool is_preset(const std::string& name);

/// The preset's scenario document. Throws ValidationError for unknown names.
nlohmann::json preset_doc(const std::string& name);

}  // namespace autoglide::harness
