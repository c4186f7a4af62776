#include "fixtures.hpp"

#include <cstdio>
#include <cstdlib>

#include "testutil.hpp"
#include "voweltrace/audio.hpp"
#include "voweltrace/textgrid.hpp"
#include "voweltrace/textio.hpp"

#define REQUIRE_OR_ABORT(cond)                                        \
    do {                                                              \
        if (!(cond)) {                                                \
            std::fprintf(stderr, "fixture invariant failed: %s\n", #cond); \
            std::abort();                                             \
        }                                                             \
    } while (0)

namespace testutil {

using voweltrace::VowelCategory;
namespace fs = std::filesystem;

const std::map<VowelCategory, std::pair<double, double>>& fixture_formants() {
    static const std::map<VowelCategory, std::pair<double, double>> table = {
        {VowelCategory::STRUT, {650.0, 1250.0}},  {VowelCategory::LOT, {550.0, 850.0}},
        {VowelCategory::KIT, {450.0, 1500.0}},    {VowelCategory::TRAP, {600.0, 1750.0}},
        {VowelCategory::FOOT, {400.0, 1050.0}},   {VowelCategory::DRESS, {480.0, 2000.0}},
        {VowelCategory::START, {750.0, 1300.0}},  {VowelCategory::NURSE, {520.0, 1600.0}},
        {VowelCategory::GOOSE, {350.0, 1850.0}},  {VowelCategory::THOUGHT, {430.0, 790.0}},
        {VowelCategory::FLEECE, {300.0, 2400.0}},
    };
    return table;
}

const char* fixture_label(VowelCategory v) {
    switch (v) {
        case VowelCategory::STRUT: return "V";
        case VowelCategory::LOT: return "Q";
        case VowelCategory::KIT: return "I";
        case VowelCategory::TRAP: return "{";
        case VowelCategory::FOOT: return "U";
        case VowelCategory::DRESS: return "e";
        case VowelCategory::START: return "A:";
        case VowelCategory::NURSE: return "3:";
        case VowelCategory::GOOSE: return "}:";
        case VowelCategory::THOUGHT: return "o:";
        case VowelCategory::FLEECE: return "i:";
    }
    return "?";
}

void write_wordlist_fixture(const fs::path& wav_dir, const fs::path& textgrid_dir, int n_lists,
                            double formant_scale) {
    fs::create_directories(wav_dir);
    fs::create_directories(textgrid_dir);

    const int rate = 16000;
    const double vowel_s = 0.28, gap_s = 0.12;
    const auto vowel_n = static_cast<size_t>(vowel_s * rate);
    const auto gap_n = static_cast<size_t>(gap_s * rate);

    for (int list = 1; list <= n_lists; ++list) {
        voweltrace::AudioClip clip;
        clip.sample_rate = rate;
        voweltrace::Alignment alignment;
        voweltrace::IntervalTier phones;
        phones.name = "MAU";

        clip.samples.insert(clip.samples.end(), gap_n, 0.0);
        double prev_end = 0.0;
        for (voweltrace::VowelCategory v : voweltrace::all_vowel_categories()) {
            const auto [f1, f2] = fixture_formants().at(v);
            voweltrace::AudioClip vowel = synth_vowel(
                {{f1 * formant_scale, 70.0}, {f2 * formant_scale, 90.0}}, 100.0, rate, vowel_s);
            REQUIRE_OR_ABORT(vowel.samples.size() == vowel_n);
            const double start = static_cast<double>(clip.samples.size()) / rate;
            clip.samples.insert(clip.samples.end(), vowel.samples.begin(), vowel.samples.end());
            const double end = static_cast<double>(clip.samples.size()) / rate;
            phones.intervals.push_back({prev_end, start, ""});  // silence tiles the tier
            phones.intervals.push_back({start, end, fixture_label(v)});
            prev_end = end;
            clip.samples.insert(clip.samples.end(), gap_n, 0.0);
        }

        alignment.xmin = 0;
        alignment.xmax = static_cast<double>(clip.samples.size()) / rate;
        phones.intervals.push_back({prev_end, alignment.xmax, ""});
        phones.xmin = 0;
        phones.xmax = alignment.xmax;
        alignment.tiers.push_back(std::move(phones));

        const std::string stem = "list" + std::to_string(list);
        voweltrace::write_wav(clip, wav_dir / (stem + ".wav"));
        voweltrace::write_text_file(textgrid_dir / (stem + ".TextGrid"),
                                    voweltrace::serialize_textgrid(alignment));
    }
}

}  // namespace testutil
