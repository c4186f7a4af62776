#include "voweltrace/perception.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "voweltrace/error.hpp"
#include "voweltrace/textio.hpp"

namespace voweltrace {

const std::array<std::string_view, kVowelCategoryCount>& hvd_words() {
    static const std::array<std::string_view, kVowelCategoryCount> words = [] {
        std::array<std::string_view, kVowelCategoryCount> w{};
        for (int i = 0; i < kVowelCategoryCount; ++i) w[i] = hvd_word(all_vowel_categories()[i]);
        return w;
    }();
    return words;
}

namespace {

// splitmix64; stable across platforms, unlike std::shuffle with a
// distribution.
std::uint64_t next_rand(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t bounded_rand(std::uint64_t& state, std::uint64_t bound) {
    // rejection sampling keeps the draw unbiased
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
        r = next_rand(state);
    } while (r >= limit);
    return r % bound;
}

std::string render_word_list(const std::vector<std::string>& words) {
    std::string out;
    for (size_t i = 0; i < words.size(); ++i) {
        if (i > 0) out += "...";
        out += words[i];
    }
    out += ".";
    return out;
}

}  // namespace

std::vector<WordList> generate_word_lists(int n_lists, std::uint64_t seed,
                                          int repeated_anchor_words) {
    if (n_lists < 1) throw ArgumentError("n_lists must be at least 1");
    if (repeated_anchor_words < 0 || repeated_anchor_words >= kVowelCategoryCount)
        throw ArgumentError("repeated_anchor_words must be in [0, 10]");

    std::uint64_t state = seed;
    std::vector<std::vector<std::string>> seen;
    std::vector<WordList> lists;
    lists.reserve(static_cast<size_t>(n_lists));

    for (int l = 0; l < n_lists; ++l) {
        std::vector<std::string> words;
        do {
            words.assign(hvd_words().begin(), hvd_words().end());
            for (size_t i = words.size() - 1; i > 0; --i)
                std::swap(words[i], words[bounded_rand(state, i + 1)]);
        } while (std::find(seen.begin(), seen.end(), words) != seen.end());
        seen.push_back(words);

        if (repeated_anchor_words > 0) {
            // re-insert the first k words, reversed, before the final word
            std::vector<std::string> anchors(words.begin(), words.begin() + repeated_anchor_words);
            std::reverse(anchors.begin(), anchors.end());
            words.insert(words.end() - 1, anchors.begin(), anchors.end());
        }

        WordList list;
        list.index = l + 1;
        list.rendered = render_word_list(words);
        list.words = std::move(words);
        lists.push_back(std::move(list));
    }
    return lists;
}

std::vector<std::string> generate_stimulus_sentences(std::span<const std::string> words,
                                                     std::string_view carrier) {
    const std::string_view placeholder = "...";
    size_t pos = carrier.find(placeholder);
    if (pos == std::string_view::npos)
        throw ArgumentError("carrier template has no '...' placeholder");
    if (carrier.find(placeholder, pos + placeholder.size()) != std::string_view::npos)
        throw ArgumentError("carrier template has more than one '...' placeholder");

    std::vector<std::string> sentences;
    sentences.reserve(words.size());
    for (const std::string& word : words) {
        std::string s(carrier.substr(0, pos));
        s += word;
        s += carrier.substr(pos + placeholder.size());
        sentences.push_back(std::move(s));
    }
    return sentences;
}

std::string_view to_string(Accent accent) {
    switch (accent) {
        case Accent::GAE: return "GAE";
        case Accent::NZE: return "NZE";
        case Accent::AusE: return "AusE";
        case Accent::CanE: return "CanE";
    }
    throw ArgumentError("invalid accent value");
}

Accent accent_from_string(std::string_view name) {
    if (name == "GAE") return Accent::GAE;
    if (name == "NZE") return Accent::NZE;
    if (name == "AusE") return Accent::AusE;
    if (name == "CanE") return Accent::CanE;
    throw ValidationError("unknown accent '" + std::string(name) +
                          "' (expected GAE, NZE, AusE or CanE)");
}

std::vector<AccentAggregate> aggregate_likert(std::span<const LikertResponse> responses) {
    std::map<std::pair<Step, Accent>, std::array<int, 5>> counts;
    size_t index = 0;
    for (const LikertResponse& r : responses) {
        ++index;
        if (r.rating < 0 || r.rating > 4)
            throw ValidationError("response " + std::to_string(index) + " (participant '" +
                                  r.participant + "', sentence '" + r.sentence + "'): rating " +
                                  std::to_string(r.rating) + " outside 0..4");
        counts[{r.step, r.accent}][static_cast<size_t>(r.rating)] += 1;
    }

    std::vector<AccentAggregate> aggregates;
    aggregates.reserve(counts.size());
    for (const auto& [key, ratings] : counts) {
        AccentAggregate agg;
        agg.step = key.first;
        agg.accent = key.second;
        for (int c : ratings) agg.n += c;
        for (size_t k = 0; k < 5; ++k)
            agg.proportions[k] = static_cast<double>(ratings[k]) / agg.n;
        aggregates.push_back(agg);
    }
    return aggregates;
}

int bin_rating(double value) {
    if (value < 0.0 || value > 1.0 || !std::isfinite(value))
        throw ValidationError("continuous rating " + format_shortest(value) + " outside [0, 1]");
    return std::min(4, static_cast<int>(std::floor(value * 5.0)));
}

std::vector<LikertResponse> responses_from_csv(const std::string& text, bool continuous_ratings) {
    auto lines = split_lines(text);
    if (lines.empty()) throw FormatError("empty responses CSV");
    if (trim(lines[0]) != "participant,step,sentence,accent,rating")
        throw FormatError("unexpected responses CSV header: " + std::string(lines[0]));

    std::vector<LikertResponse> responses;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        auto fields = split(lines[i], ',');
        if (fields.size() != 5)
            throw FormatError("responses CSV row " + std::to_string(i + 1) + ": expected 5 fields");
        LikertResponse r;
        r.participant = std::string(trim(fields[0]));
        r.step = parse_int(fields[1], "step");
        r.sentence = std::string(trim(fields[2]));
        r.accent = accent_from_string(trim(fields[3]));
        if (continuous_ratings) {
            r.rating = bin_rating(parse_double(fields[4], "rating"));
        } else {
            auto rating = parse_int(fields[4], "rating");
            if (rating < 0 || rating > 4)
                throw ValidationError("responses CSV row " + std::to_string(i + 1) + ": rating " +
                                      std::to_string(rating) + " outside 0..4");
            r.rating = static_cast<int>(rating);
        }
        responses.push_back(std::move(r));
    }
    return responses;
}

std::string aggregates_to_csv(std::span<const AccentAggregate> aggregates) {
    std::string out = "step,accent,p0,p1,p2,p3,p4,n\n";
    for (const AccentAggregate& a : aggregates) {
        out += std::to_string(a.step);
        out += ",";
        out += to_string(a.accent);
        for (double p : a.proportions) out += "," + format_fixed(p, 6);
        out += "," + std::to_string(a.n);
        out += "\n";
    }
    return out;
}

}  // namespace voweltrace
