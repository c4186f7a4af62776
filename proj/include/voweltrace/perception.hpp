#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "voweltrace/vowel.hpp"
#include "voweltrace/vowelspace.hpp"

namespace voweltrace {

// The 11 hVd words, in vowel-category order.
const std::array<std::string_view, kVowelCategoryCount>& hvd_words();

struct WordList {
    int index = 0;
    std::vector<std::string> words;
    std::string rendered;  // "heard...hood...hud."
};

// Seeded-deterministic permutations of the 11 hVd words, pairwise
// distinct. repeated_anchor_words > 0 re-appends the first k words (in
// reverse order) before the final word, giving the 11+k-token variant
// seen in published word lists.
std::vector<WordList> generate_word_lists(int n_lists, std::uint64_t seed,
                                          int repeated_anchor_words = 0);

// One sentence per word; the carrier must contain the placeholder "..."
// exactly once.
std::vector<std::string> generate_stimulus_sentences(
    std::span<const std::string> words, std::string_view carrier = "Say the word ... again");

enum class Accent { GAE, NZE, AusE, CanE };

std::string_view to_string(Accent accent);
Accent accent_from_string(std::string_view name);

// rating: 0 = "Not at all like this accent" .. 4 = "Completely this accent"
struct LikertResponse {
    std::string participant;
    Step step = 0;
    std::string sentence;
    Accent accent = Accent::GAE;
    int rating = 0;
};

struct AccentAggregate {
    Step step = 0;
    Accent accent = Accent::GAE;
    std::array<double, 5> proportions{};  // sum to 1
    int n = 0;
};

// Groups by (step, accent); proportions[k] = count(rating == k) / n.
// Out-of-range ratings raise a validation error identifying the record.
std::vector<AccentAggregate> aggregate_likert(std::span<const LikertResponse> responses);

// Bins a continuous rating in [0, 1] into the 5 Likert bands.
int bin_rating(double value);

// CSV: participant,step,sentence,accent,rating
// continuous_ratings: ratings are reals in [0, 1], binned on read.
std::vector<LikertResponse> responses_from_csv(const std::string& text,
                                               bool continuous_ratings = false);

// CSV: step,accent,p0,p1,p2,p3,p4,n
std::string aggregates_to_csv(std::span<const AccentAggregate> aggregates);

}  // namespace voweltrace
