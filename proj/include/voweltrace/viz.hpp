#pragma once

#include <span>
#include <string>
#include <vector>

#include "voweltrace/perception.hpp"
#include "voweltrace/vowelspace.hpp"

namespace voweltrace {

enum class LabelMode { lexical_word, ipa, step_number };

struct PlotOptions {
    double width = 960;
    double height = 720;
    // Axis ranges in Hz; auto-expanded when data falls outside.
    double f1_min = 200, f1_max = 900;
    double f2_min = 600, f2_max = 2600;
    bool show_reference = true;
    bool show_hull = false;
    LabelMode label_mode = LabelMode::step_number;
    // One color per vowel category; empty selects the built-in palette.
    std::vector<std::string> palette;
};

const std::vector<std::string>& default_vowel_palette();  // 11 colors
const std::array<std::string, 5>& likert_band_palette();  // brown -> green

// Vowel chart orientation: F2 increases leftward, F1 increases downward
// (high front vowels plot top-left). One polyline per category through
// its per-step points; step indices annotated per label_mode; reference
// points labeled with the lexical word in the category color.
// Deterministic: identical inputs give byte-identical SVG.
std::string render_vowel_space_svg(const Trajectory& trajectory, const PlotOptions& options = {});

// One stacked bar per (step, accent), grouped by accent, 5 bands
// bottom-to-top from rating 0 to 4.
std::string render_likert_svg(std::span<const AccentAggregate> aggregates,
                              const PlotOptions& options = {});

}  // namespace voweltrace
