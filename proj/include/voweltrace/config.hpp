#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "voweltrace/formant.hpp"
#include "voweltrace/viz.hpp"
#include "voweltrace/vowelspace.hpp"

namespace voweltrace {

// Flat `key = value` configuration mirroring FormantConfig and
// PlotOptions fields, plus analysis knobs. Unknown keys are errors.
//
//   max_formant_hz = 5500        window_s = 0.025
//   n_formants = 5               time_step_s = 0.00625
//   preemph_from_hz = 50         strategy = middle-half-mean | midpoint
//   phone_tier = MAU             word_tier = ORT
//   width = 960                  height = 720
//   f1_min = 200  f1_max = 900   f2_min = 600  f2_max = 2600
//   show_reference = true        show_hull = false
//   label_mode = step-number | lexical-word | ipa
//   palette = #1f77b4,#ff7f0e,...
struct ToolConfig {
    FormantConfig formant;
    PlotOptions plot;
    MeasureStrategy strategy = MeasureStrategy::middle_half_mean;
    std::string phone_tier = "MAU";           // WebMAUS phone tier
    std::optional<std::string> word_tier;     // e.g. "ORT"
};

ToolConfig parse_config(const std::string& text);
ToolConfig read_config(const std::filesystem::path& path);

MeasureStrategy strategy_from_string(std::string_view name);
LabelMode label_mode_from_string(std::string_view name);

}  // namespace voweltrace
