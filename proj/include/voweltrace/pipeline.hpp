#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "voweltrace/config.hpp"
#include "voweltrace/textgrid.hpp"
#include "voweltrace/vowelspace.hpp"

namespace voweltrace {

// Exit statuses shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNoData = 2;  // ran, but produced no measurements

// The checkpoint schedule used by the reference evaluation runs, denser
// early where the voice changes fastest.
const std::vector<Step>& default_checkpoint_steps();  // 0..28000

struct AnalyzeOptions {
    ToolConfig config;
    LabelMap label_map;  // empty selects default_label_map()
    std::optional<std::filesystem::path> frames_dir;  // per-frame CSV dumps
    bool parallel = true;
};

struct FileReport {
    std::string stem;
    int tokens = 0;
    std::vector<std::string> warnings;
    std::string error;  // non-empty when the file failed
};

struct AnalyzeResult {
    VowelSpace space;
    std::vector<VowelToken> tokens;
    std::vector<FileReport> reports;
};

// Pairs every *.wav in wav_dir with the same-stem TextGrid in
// textgrid_dir, runs formant tracking + segment extraction + vowel
// measurement per pair, and aggregates the tokens into one space.
// Mismatched stems and per-file failures are reported, not fatal.
AnalyzeResult analyze_directory(const std::filesystem::path& wav_dir,
                                const std::filesystem::path& textgrid_dir, Step step,
                                const AnalyzeOptions& options);

struct ManifestEntry {
    Step step = 0;
    std::filesystem::path wav_dir;
    std::filesystem::path textgrid_dir;
};

// One `step<TAB>wav_dir<TAB>textgrid_dir` line per checkpoint; '#'
// comments and blank lines skipped. Steps must be unique and ascending.
// Relative directories resolve against base_dir.
std::vector<ManifestEntry> parse_manifest(const std::string& text,
                                          const std::filesystem::path& base_dir = ".");
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

// Command bodies behind the CLI; they write declared outputs (plus a
// `<out>.log` run log) and return an exit status.
int cmd_analyze(const std::filesystem::path& wav_dir, const std::filesystem::path& textgrid_dir,
                Step step, const AnalyzeOptions& options, const std::filesystem::path& out_csv);

int cmd_trajectory(const std::vector<ManifestEntry>& manifest,
                   const std::optional<std::filesystem::path>& reference_csv,
                   const AnalyzeOptions& options, const std::filesystem::path& out_svg,
                   const std::optional<std::filesystem::path>& out_csv);

struct StimuliOptions {
    enum class Mode { hvd_lists, carrier } mode = Mode::hvd_lists;
    int n_lists = 5;
    std::uint64_t seed = 0;
    int repeated_anchor_words = 0;
    std::vector<std::string> words;  // carrier mode
    std::string carrier = "Say the word ... again";
};

int cmd_stimuli(const StimuliOptions& options, const std::filesystem::path& out);

int cmd_likert(const std::filesystem::path& responses_csv, const PlotOptions& plot,
               const std::filesystem::path& out_svg, const std::filesystem::path& out_csv,
               bool continuous_ratings = false);

}  // namespace voweltrace
