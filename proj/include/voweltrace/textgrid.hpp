#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voweltrace/vowel.hpp"

namespace voweltrace {

struct Interval {
    double start = 0;
    double end = 0;
    std::string label;

    bool operator==(const Interval&) const = default;
};

struct IntervalTier {
    std::string name;
    double xmin = 0;
    double xmax = 0;
    std::vector<Interval> intervals;  // sorted, non-overlapping, start < end

    bool operator==(const IntervalTier&) const = default;
};

struct Alignment {
    double xmin = 0;
    double xmax = 0;
    std::vector<IntervalTier> tiers;
    std::vector<std::string> warnings;  // e.g. skipped point tiers

    const IntervalTier* find_tier(std::string_view name) const;

    bool operator==(const Alignment& other) const {
        return xmin == other.xmin && xmax == other.xmax && tiers == other.tiers;
    }
};

// Parses Praat TextGrid text, long ("ooTextFile") or short form.
// Accepts UTF-8 (optionally with BOM) and UTF-16 LE/BE with BOM.
// Point tiers are skipped with a warning record.
Alignment parse_textgrid(const std::string& text);
Alignment read_textgrid(const std::filesystem::path& path);

// Long-form output; parse(serialize(a)) == a.
std::string serialize_textgrid(const Alignment& alignment);

// Phone label -> vowel category. Case-sensitive.
using LabelMap = std::map<std::string, VowelCategory>;

// Covers SAMPA and IPA renderings of the 11 NZE monophthongs.
const LabelMap& default_label_map();

// One `phone_label = CATEGORY` pair per line; '#' comments allowed.
LabelMap parse_label_map(const std::string& text);
LabelMap read_label_map(const std::filesystem::path& path);

struct VowelSegment {
    VowelCategory vowel = VowelCategory::STRUT;
    double start = 0;  // seconds
    double end = 0;
    std::string word;  // enclosing word when a word tier was given
    std::string clip_ref;
    bool too_short = false;  // under 30 ms: shorter than one analysis window
};

// Emits one segment per phone-tier interval whose (trimmed) label is a
// key of label_map, ordered by start time. When word_tier is given each
// segment carries the word whose interval contains the vowel midpoint.
std::vector<VowelSegment> extract_vowel_segments(const Alignment& alignment,
                                                 std::string_view phone_tier,
                                                 const std::optional<std::string>& word_tier,
                                                 const LabelMap& label_map,
                                                 std::string clip_ref = "");

}  // namespace voweltrace
