#include "voweltrace/pipeline.hpp"

#include <algorithm>
#include <iostream>

#include "voweltrace/audio.hpp"
#include "voweltrace/error.hpp"
#include "voweltrace/formant.hpp"
#include "voweltrace/perception.hpp"
#include "voweltrace/textio.hpp"
#include "voweltrace/viz.hpp"

namespace voweltrace {

namespace fs = std::filesystem;

const std::vector<Step>& default_checkpoint_steps() {
    static const std::vector<Step> steps = {0, 1000, 3000, 7000, 10000, 16000, 20000, 28000};
    return steps;
}

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<fs::path> list_wavs(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    std::vector<fs::path> wavs;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (lower(entry.path().extension().string()) == ".wav") wavs.push_back(entry.path());
    }
    std::sort(wavs.begin(), wavs.end());
    return wavs;
}

std::optional<fs::path> matching_textgrid(const fs::path& dir, const std::string& stem) {
    for (const char* ext : {".TextGrid", ".textgrid", ".textGrid"}) {
        fs::path candidate = dir / (stem + ext);
        if (fs::exists(candidate)) return candidate;
    }
    return std::nullopt;
}

struct FileOutcome {
    FileReport report;
    std::vector<VowelToken> tokens;
};

FileOutcome analyze_file(const fs::path& wav_path, const fs::path& textgrid_path, Step step,
                         const AnalyzeOptions& options, const LabelMap& label_map) {
    FileOutcome outcome;
    outcome.report.stem = wav_path.stem().string();

    AudioClip clip = read_wav(wav_path);
    FormantTrack track = track_formants(clip, options.config.formant);
    for (const std::string& w : track.warnings) outcome.report.warnings.push_back(w);

    if (options.frames_dir) {
        fs::create_directories(*options.frames_dir);
        write_text_file(*options.frames_dir / (outcome.report.stem + ".csv"), track_to_csv(track));
    }

    Alignment alignment = read_textgrid(textgrid_path);
    for (const std::string& w : alignment.warnings) outcome.report.warnings.push_back(w);

    std::vector<VowelSegment> segments =
        extract_vowel_segments(alignment, options.config.phone_tier, options.config.word_tier,
                               label_map, outcome.report.stem);
    for (const VowelSegment& segment : segments) {
        if (segment.too_short)
            outcome.report.warnings.push_back(std::string(lexical_word(segment.vowel)) + " at " +
                                              format_fixed(segment.start, 3) +
                                              " s is under 30 ms");
        auto measured = measure_vowel(track, segment, options.config.strategy);
        if (!measured) {
            outcome.report.warnings.push_back("no formant frames for " +
                                              std::string(lexical_word(segment.vowel)) + " at " +
                                              format_fixed(segment.start, 3) + " s");
            continue;
        }
        VowelToken token = make_token(segment.vowel, measured->first, measured->second, step,
                                      outcome.report.stem + ":" + format_fixed(segment.start, 3));
        if (token.out_of_range)
            outcome.report.warnings.push_back(std::string(lexical_word(token.vowel)) + " at " +
                                              format_fixed(segment.start, 3) +
                                              " s outside nominal F1/F2 ranges (" +
                                              format_fixed(token.f1_hz, 0) + ", " +
                                              format_fixed(token.f2_hz, 0) + ")");
        outcome.tokens.push_back(std::move(token));
    }
    outcome.report.tokens = static_cast<int>(outcome.tokens.size());
    return outcome;
}

}  // namespace

AnalyzeResult analyze_directory(const fs::path& wav_dir, const fs::path& textgrid_dir, Step step,
                                const AnalyzeOptions& options) {
    const std::vector<fs::path> wavs = list_wavs(wav_dir);
    if (wavs.empty()) throw IoError("no .wav files in " + wav_dir.string());
    if (!fs::is_directory(textgrid_dir))
        throw IoError("not a directory: " + textgrid_dir.string());
    const LabelMap& label_map =
        options.label_map.empty() ? default_label_map() : options.label_map;

    const auto n = static_cast<std::int64_t>(wavs.size());
    std::vector<FileOutcome> outcomes(static_cast<size_t>(n));

#pragma omp parallel for schedule(dynamic) if (options.parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        const fs::path& wav_path = wavs[static_cast<size_t>(i)];
        FileOutcome& outcome = outcomes[static_cast<size_t>(i)];
        try {
            auto textgrid_path = matching_textgrid(textgrid_dir, wav_path.stem().string());
            if (!textgrid_path) {
                outcome.report.stem = wav_path.stem().string();
                outcome.report.error = "no matching TextGrid; skipped";
            } else {
                outcome = analyze_file(wav_path, *textgrid_path, step, options, label_map);
            }
        } catch (const std::exception& e) {
            outcome.report.stem = wav_path.stem().string();
            outcome.report.error = e.what();
        }
    }

    AnalyzeResult result;
    for (FileOutcome& outcome : outcomes) {  // file order: deterministic merge
        result.reports.push_back(std::move(outcome.report));
        for (VowelToken& t : outcome.tokens) result.tokens.push_back(std::move(t));
    }
    result.space = build_space(result.tokens, step);
    return result;
}

namespace {

std::string run_log(const std::vector<FileReport>& reports) {
    std::string log;
    for (const FileReport& r : reports) {
        log += r.stem + "\ttokens=" + std::to_string(r.tokens);
        if (!r.error.empty()) log += "\terror: " + r.error;
        for (const std::string& w : r.warnings) log += "\twarn: " + w;
        log += "\n";
    }
    return log;
}

}  // namespace

int cmd_analyze(const fs::path& wav_dir, const fs::path& textgrid_dir, Step step,
                const AnalyzeOptions& options, const fs::path& out_csv) {
    AnalyzeResult result = analyze_directory(wav_dir, textgrid_dir, step, options);

    const VowelSpace spaces[1] = {result.space};
    write_text_file(out_csv, spaces_to_csv(spaces));
    write_text_file(fs::path(out_csv.string() + ".log"), run_log(result.reports));

    bool all_failed = true;
    for (const FileReport& r : result.reports) {
        if (!r.error.empty())
            std::cerr << r.stem << ": " << r.error << "\n";
        else
            all_failed = false;
    }
    if (all_failed) return kExitError;
    if (result.tokens.empty()) {
        std::cerr << "no vowel tokens measured; vowel space is empty\n";
        return kExitNoData;
    }
    return kExitOk;
}

std::vector<ManifestEntry> parse_manifest(const std::string& text, const fs::path& base_dir) {
    std::vector<ManifestEntry> entries;
    long line_no = 0;
    for (std::string_view line : split_lines(text)) {
        ++line_no;
        std::string_view content = trim(line);
        if (content.empty() || content.front() == '#') continue;
        auto fields = split(content, '\t');
        if (fields.size() != 3)
            throw ParseError("expected 'step<TAB>wav_dir<TAB>textgrid_dir'", line_no);
        ManifestEntry entry;
        entry.step = parse_int(fields[0], "manifest step");
        if (entry.step < 0) throw ParseError("negative step", line_no);
        entry.wav_dir = fs::path(std::string(trim(fields[1])));
        entry.textgrid_dir = fs::path(std::string(trim(fields[2])));
        if (entry.wav_dir.is_relative()) entry.wav_dir = base_dir / entry.wav_dir;
        if (entry.textgrid_dir.is_relative()) entry.textgrid_dir = base_dir / entry.textgrid_dir;
        if (!entries.empty() && entry.step <= entries.back().step)
            throw ParseError("steps must be unique and ascending", line_no);
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
    return parse_manifest(read_text_file(path), path.parent_path());
}

int cmd_trajectory(const std::vector<ManifestEntry>& manifest,
                   const std::optional<fs::path>& reference_csv, const AnalyzeOptions& options,
                   const fs::path& out_svg, const std::optional<fs::path>& out_csv) {
    if (manifest.empty()) throw ConfigError("manifest has no entries");
    if (out_csv && !reference_csv)
        throw ConfigError("convergence output requires a reference vowel space (--reference)");

    std::optional<VowelSpace> reference;
    if (reference_csv) {
        auto spaces = spaces_from_csv(read_text_file(*reference_csv));
        if (spaces.empty()) throw FormatError("reference CSV has no rows");
        reference = std::move(spaces.front());
    }

    std::vector<VowelSpace> spaces;
    std::vector<FileReport> reports;
    for (const ManifestEntry& entry : manifest) {
        if (!fs::is_directory(entry.wav_dir))
            throw IoError("step " + std::to_string(entry.step) +
                          ": missing wav directory " + entry.wav_dir.string());
        if (!fs::is_directory(entry.textgrid_dir))
            throw IoError("step " + std::to_string(entry.step) +
                          ": missing textgrid directory " + entry.textgrid_dir.string());
        AnalyzeResult result =
            analyze_directory(entry.wav_dir, entry.textgrid_dir, entry.step, options);
        for (FileReport& r : result.reports) {
            r.stem = std::to_string(entry.step) + "/" + r.stem;
            reports.push_back(std::move(r));
        }
        spaces.push_back(std::move(result.space));
    }

    Trajectory trajectory = make_trajectory(std::move(spaces), std::move(reference));
    write_text_file(out_svg, render_vowel_space_svg(trajectory, options.config.plot));
    if (out_csv) {
        auto curve = convergence_curve(trajectory);
        write_text_file(*out_csv, convergence_to_csv(curve));
    }
    write_text_file(fs::path(out_svg.string() + ".log"), run_log(reports));

    bool any_tokens = false;
    for (const VowelSpace& space : trajectory.spaces)
        if (!space.points.empty()) any_tokens = true;
    return any_tokens ? kExitOk : kExitNoData;
}

int cmd_stimuli(const StimuliOptions& options, const fs::path& out) {
    std::string text;
    if (options.mode == StimuliOptions::Mode::hvd_lists) {
        for (const WordList& list :
             generate_word_lists(options.n_lists, options.seed, options.repeated_anchor_words))
            text += list.rendered + "\n";
    } else {
        if (options.words.empty())
            throw ConfigError("carrier mode needs words (--words or --words-file)");
        for (const std::string& s : generate_stimulus_sentences(options.words, options.carrier))
            text += s + "\n";
    }
    write_text_file(out, text);
    return kExitOk;
}

int cmd_likert(const fs::path& responses_csv, const PlotOptions& plot, const fs::path& out_svg,
               const fs::path& out_csv, bool continuous_ratings) {
    auto responses = responses_from_csv(read_text_file(responses_csv), continuous_ratings);
    auto aggregates = aggregate_likert(responses);
    if (aggregates.empty()) {
        std::cerr << "no responses to aggregate\n";
        return kExitNoData;
    }
    write_text_file(out_csv, aggregates_to_csv(aggregates));
    write_text_file(out_svg, render_likert_svg(aggregates, plot));
    return kExitOk;
}

}  // namespace voweltrace
