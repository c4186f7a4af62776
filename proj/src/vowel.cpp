#include "voweltrace/vowel.hpp"

namespace voweltrace {

namespace {

struct VowelInfo {
    VowelCategory category;
    std::string_view lexical;
    std::string_view ipa;
    std::string_view hvd;
    bool perception_target;
};

// NZE monophthong inventory with Wells' lexical words and hVd frames.
constexpr VowelInfo kVowels[kVowelCategoryCount] = {
    {VowelCategory::STRUT, "STRUT", "ʌ", "hud", false},
    {VowelCategory::LOT, "LOT", "ɒ", "hod", true},
    {VowelCategory::KIT, "KIT", "ɪ", "hid", true},
    {VowelCategory::TRAP, "TRAP", "æ", "had", true},
    {VowelCategory::FOOT, "FOOT", "ʊ", "hood", false},
    {VowelCategory::DRESS, "DRESS", "e", "head", true},
    {VowelCategory::START, "START", "ɑː", "hard", true},
    {VowelCategory::NURSE, "NURSE", "ɜː", "heard", true},
    {VowelCategory::GOOSE, "GOOSE", "ʉː", "who'd", true},
    {VowelCategory::THOUGHT, "THOUGHT", "oː", "horde", false},
    {VowelCategory::FLEECE, "FLEECE", "iː", "heed", true},
};

const VowelInfo& info(VowelCategory v) { return kVowels[static_cast<int>(v)]; }

}  // namespace

const std::array<VowelCategory, kVowelCategoryCount>& all_vowel_categories() {
    static const std::array<VowelCategory, kVowelCategoryCount> order = [] {
        std::array<VowelCategory, kVowelCategoryCount> a{};
        for (int i = 0; i < kVowelCategoryCount; ++i) a[i] = kVowels[i].category;
        return a;
    }();
    return order;
}

std::string_view lexical_word(VowelCategory v) { return info(v).lexical; }
std::string_view ipa_symbol(VowelCategory v) { return info(v).ipa; }
std::string_view hvd_word(VowelCategory v) { return info(v).hvd; }
bool perception_target(VowelCategory v) { return info(v).perception_target; }

std::optional<VowelCategory> vowel_from_lexical_word(std::string_view word) {
    for (const auto& vi : kVowels)
        if (vi.lexical == word) return vi.category;
    return std::nullopt;
}

}  // namespace voweltrace
