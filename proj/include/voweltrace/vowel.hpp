#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace voweltrace {

// The 11 NZE monophthongs, keyed by Wells' lexical word.
enum class VowelCategory {
    STRUT,
    LOT,
    KIT,
    TRAP,
    FOOT,
    DRESS,
    START,
    NURSE,
    GOOSE,
    THOUGHT,
    FLEECE,
};

inline constexpr int kVowelCategoryCount = 11;

const std::array<VowelCategory, kVowelCategoryCount>& all_vowel_categories();

std::string_view lexical_word(VowelCategory v);  // "STRUT", "KIT", ...
std::string_view ipa_symbol(VowelCategory v);    // "ʌ", "ɪ", ...
std::string_view hvd_word(VowelCategory v);      // "hud", "hid", ...

// Vowels whose GAE/NZE realisations differ most; the ones used in
// perception stimuli (8 of 11).
bool perception_target(VowelCategory v);

std::optional<VowelCategory> vowel_from_lexical_word(std::string_view word);

}  // namespace voweltrace
