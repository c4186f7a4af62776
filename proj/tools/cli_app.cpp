#include "cli_app.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "voweltrace/config.hpp"
#include "voweltrace/error.hpp"
#include "voweltrace/pipeline.hpp"
#include "voweltrace/textio.hpp"

namespace voweltrace {

namespace {

namespace fs = std::filesystem;

// Flags shared by the analysis commands; config file first, flags win.
struct CommonFlags {
    std::string config_path;
    std::string label_map_path;
    std::string strategy;
    std::string phone_tier;
    std::string word_tier;
    double max_formant_hz = 0;
    int n_formants = 0;
    double window_s = 0;
    double time_step_s = 0;
    double preemph_from_hz = -1;
    double max_bandwidth_hz = -1;
    bool serial = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "flat key = value configuration file");
        cmd->add_option("--label-map", label_map_path,
                        "phone label map file (one 'label = CATEGORY' per line)");
        cmd->add_option("--strategy", strategy, "middle-half-mean or midpoint");
        cmd->add_option("--max-formant-hz", max_formant_hz, "formant analysis ceiling in Hz");
        cmd->add_option("--n-formants", n_formants, "number of formants to track");
        cmd->add_option("--window-s", window_s, "effective analysis window in seconds");
        cmd->add_option("--time-step-s", time_step_s, "frame hop in seconds");
        cmd->add_option("--preemph-from-hz", preemph_from_hz, "pre-emphasis start frequency");
        cmd->add_option("--max-bandwidth-hz", max_bandwidth_hz,
                        "drop resonances wider than this (0 keeps all)");
        cmd->add_option("--phone-tier", phone_tier, "TextGrid phone tier name (default MAU)");
        cmd->add_option("--word-tier", word_tier, "TextGrid word tier name");
        cmd->add_flag("--serial", serial, "disable parallel analysis");
    }

    AnalyzeOptions resolve() const {
        AnalyzeOptions options;
        if (!config_path.empty()) options.config = read_config(config_path);
        if (!label_map_path.empty()) options.label_map = read_label_map(label_map_path);
        if (!strategy.empty()) options.config.strategy = strategy_from_string(strategy);
        if (max_formant_hz > 0) options.config.formant.max_formant_hz = max_formant_hz;
        if (n_formants > 0) options.config.formant.n_formants = n_formants;
        if (window_s > 0) options.config.formant.window_s = window_s;
        if (time_step_s > 0) options.config.formant.time_step_s = time_step_s;
        if (preemph_from_hz >= 0) options.config.formant.preemph_from_hz = preemph_from_hz;
        if (max_bandwidth_hz >= 0) options.config.formant.max_bandwidth_hz = max_bandwidth_hz;
        if (!phone_tier.empty()) options.config.phone_tier = phone_tier;
        if (!word_tier.empty()) options.config.word_tier = word_tier;
        options.parallel = !serial;
        return options;
    }
};

struct PlotFlags {
    double width = 0, height = 0;
    double f1_min = 0, f1_max = 0, f2_min = 0, f2_max = 0;
    std::string label_mode;
    std::string palette;
    bool no_reference = false;
    bool show_hull = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--width", width, "plot width in pixels");
        cmd->add_option("--height", height, "plot height in pixels");
        cmd->add_option("--f1-min", f1_min, "F1 axis lower bound in Hz");
        cmd->add_option("--f1-max", f1_max, "F1 axis upper bound in Hz");
        cmd->add_option("--f2-min", f2_min, "F2 axis lower bound in Hz");
        cmd->add_option("--f2-max", f2_max, "F2 axis upper bound in Hz");
        cmd->add_option("--label-mode", label_mode, "lexical-word, ipa or step-number");
        cmd->add_option("--palette", palette, "comma-separated colors, one per vowel");
        cmd->add_flag("--no-reference", no_reference, "do not draw the reference space");
        cmd->add_flag("--show-hull", show_hull, "outline the convex hull");
    }

    void apply(PlotOptions& plot) const {
        if (width > 0) plot.width = width;
        if (height > 0) plot.height = height;
        if (f1_min > 0) plot.f1_min = f1_min;
        if (f1_max > 0) plot.f1_max = f1_max;
        if (f2_min > 0) plot.f2_min = f2_min;
        if (f2_max > 0) plot.f2_max = f2_max;
        if (!label_mode.empty()) plot.label_mode = label_mode_from_string(label_mode);
        if (!palette.empty()) {
            plot.palette.clear();
            for (const std::string& c : split(palette, ','))
                plot.palette.push_back(std::string(trim(c)));
        }
        if (no_reference) plot.show_reference = false;
        if (show_hull) plot.show_hull = true;
    }
};

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"vowel space analysis for speech synthesis training"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand(
        "analyze", "measure one checkpoint: WAV + TextGrid directories to a vowel space CSV");
    std::string wav_dir, textgrid_dir, out_csv, frames_dir;
    Step step = 0;
    CommonFlags analyze_flags;
    analyze->add_option("--wav-dir", wav_dir, "directory of synthesized .wav files")->required();
    analyze->add_option("--textgrid-dir", textgrid_dir, "directory of matching TextGrids")
        ->required();
    analyze->add_option("--step", step, "training step this checkpoint was taken at")->required();
    analyze->add_option("--out", out_csv, "output vowel space CSV")->required();
    analyze->add_option("--frames-dir", frames_dir, "dump per-frame formant CSVs here");
    analyze_flags.attach(analyze);

    // trajectory
    auto* trajectory = app.add_subcommand(
        "trajectory", "analyze a checkpoint manifest into a trajectory SVG and convergence CSV");
    std::string manifest_path, reference_path, traj_svg, traj_csv;
    CommonFlags traj_flags;
    PlotFlags traj_plot;
    trajectory->add_option("--manifest", manifest_path,
                           "manifest: step<TAB>wav_dir<TAB>textgrid_dir per line")
        ->required();
    trajectory->add_option("--out-svg", traj_svg, "output trajectory SVG")->required();
    trajectory->add_option("--out-csv", traj_csv, "output convergence CSV (needs --reference)");
    trajectory->add_option("--reference", reference_path, "reference vowel space CSV");
    traj_flags.attach(trajectory);
    traj_plot.attach(trajectory);

    // stimuli
    auto* stimuli = app.add_subcommand("stimuli", "generate hVd word lists or carrier sentences");
    std::string mode = "hvd-lists", stimuli_out, words_csv, words_file, carrier;
    int n_lists = 5, repeat_anchors = 0;
    std::uint64_t seed = 0;
    stimuli->add_option("--mode", mode, "hvd-lists or carrier")->required();
    stimuli->add_option("--n", n_lists, "number of word lists");
    stimuli->add_option("--seed", seed, "random seed");
    stimuli->add_option("--repeat-anchors", repeat_anchors,
                        "re-append the first K words before the final word");
    stimuli->add_option("--words", words_csv, "comma-separated words for carrier mode");
    stimuli->add_option("--words-file", words_file, "file with one word per line");
    stimuli->add_option("--carrier", carrier, "carrier template with one '...' placeholder");
    stimuli->add_option("--out", stimuli_out, "output text file")->required();

    // likert
    auto* likert = app.add_subcommand(
        "likert", "aggregate perception responses into a CSV and stacked-bar SVG");
    std::string responses_path, likert_svg, likert_csv, likert_config;
    bool continuous = false;
    PlotFlags likert_plot;
    likert->add_option("--responses", responses_path,
                       "responses CSV: participant,step,sentence,accent,rating")
        ->required();
    likert->add_option("--out-svg", likert_svg, "output stacked-bar SVG")->required();
    likert->add_option("--out-csv", likert_csv, "output aggregate CSV")->required();
    likert->add_option("--config", likert_config, "flat key = value configuration file");
    likert->add_flag("--continuous", continuous, "ratings are reals in [0,1]; bin to 5 bands");
    likert_plot.attach(likert);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (analyze->parsed()) {
            AnalyzeOptions options = analyze_flags.resolve();
            if (!frames_dir.empty()) options.frames_dir = fs::path(frames_dir);
            return cmd_analyze(wav_dir, textgrid_dir, step, options, out_csv);
        }
        if (trajectory->parsed()) {
            AnalyzeOptions options = traj_flags.resolve();
            traj_plot.apply(options.config.plot);
            std::optional<fs::path> reference;
            if (!reference_path.empty()) reference = fs::path(reference_path);
            std::optional<fs::path> csv;
            if (!traj_csv.empty()) csv = fs::path(traj_csv);
            return cmd_trajectory(read_manifest(manifest_path), reference, options, traj_svg, csv);
        }
        if (stimuli->parsed()) {
            StimuliOptions options;
            if (mode == "hvd-lists") {
                options.mode = StimuliOptions::Mode::hvd_lists;
            } else if (mode == "carrier") {
                options.mode = StimuliOptions::Mode::carrier;
            } else {
                throw ConfigError("unknown stimuli mode '" + mode + "'");
            }
            options.n_lists = n_lists;
            options.seed = seed;
            options.repeated_anchor_words = repeat_anchors;
            if (!carrier.empty()) options.carrier = carrier;
            if (!words_csv.empty())
                for (const std::string& w : split(words_csv, ','))
                    options.words.push_back(std::string(trim(w)));
            if (!words_file.empty())
                for (std::string_view line : split_lines(read_text_file(words_file)))
                    if (!trim(line).empty()) options.words.push_back(std::string(trim(line)));
            return cmd_stimuli(options, stimuli_out);
        }
        if (likert->parsed()) {
            PlotOptions plot;
            if (!likert_config.empty()) plot = read_config(likert_config).plot;
            likert_plot.apply(plot);
            return cmd_likert(responses_path, plot, likert_svg, likert_csv, continuous);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

}  // namespace voweltrace
