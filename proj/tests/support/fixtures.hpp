#pragma once

#include <filesystem>
#include <map>
#include <utility>

#include "voweltrace/vowel.hpp"

namespace testutil {

// Injected per-category resonances for synthetic "word list" fixtures.
// All inside the nominal F1/F2 ranges and mutually distinct.
const std::map<voweltrace::VowelCategory, std::pair<double, double>>& fixture_formants();

// SAMPA label the fixture TextGrids use for each category.
const char* fixture_label(voweltrace::VowelCategory v);

// Writes list<i>.wav and list<i>.TextGrid pairs into wav_dir and
// textgrid_dir: each "list" is the 11 synthetic vowels (two-resonator,
// f0 = 100 Hz, 16 kHz) separated by silence, with a matching MAU phone
// tier. A scale factor shifts every resonance, for trajectory fixtures.
void write_wordlist_fixture(const std::filesystem::path& wav_dir,
                            const std::filesystem::path& textgrid_dir, int n_lists,
                            double formant_scale = 1.0);

}  // namespace testutil
