#include "voweltrace/config.hpp"

#include "voweltrace/error.hpp"
#include "voweltrace/textio.hpp"

namespace voweltrace {

MeasureStrategy strategy_from_string(std::string_view name) {
    if (name == "middle-half-mean") return MeasureStrategy::middle_half_mean;
    if (name == "midpoint") return MeasureStrategy::midpoint;
    throw ConfigError("unknown strategy '" + std::string(name) +
                      "' (expected middle-half-mean or midpoint)");
}

LabelMode label_mode_from_string(std::string_view name) {
    if (name == "lexical-word") return LabelMode::lexical_word;
    if (name == "ipa") return LabelMode::ipa;
    if (name == "step-number") return LabelMode::step_number;
    throw ConfigError("unknown label mode '" + std::string(name) +
                      "' (expected lexical-word, ipa or step-number)");
}

namespace {

bool parse_bool(std::string_view value, std::string_view key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("invalid boolean '" + std::string(value) + "' for " + std::string(key));
}

}  // namespace

ToolConfig parse_config(const std::string& text) {
    ToolConfig cfg;
    long line_no = 0;
    for (std::string_view line : split_lines(text)) {
        ++line_no;
        std::string_view content = trim(line);
        if (content.empty() || content.front() == '#') continue;
        size_t eq = content.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        std::string key(trim(content.substr(0, eq)));
        std::string value(trim(content.substr(eq + 1)));

        if (key == "max_formant_hz") {
            cfg.formant.max_formant_hz = parse_double(value, key);
        } else if (key == "n_formants") {
            cfg.formant.n_formants = static_cast<int>(parse_int(value, key));
        } else if (key == "window_s") {
            cfg.formant.window_s = parse_double(value, key);
        } else if (key == "time_step_s") {
            cfg.formant.time_step_s = parse_double(value, key);
        } else if (key == "preemph_from_hz") {
            cfg.formant.preemph_from_hz = parse_double(value, key);
        } else if (key == "max_bandwidth_hz") {
            cfg.formant.max_bandwidth_hz = parse_double(value, key);
        } else if (key == "strategy") {
            cfg.strategy = strategy_from_string(value);
        } else if (key == "phone_tier") {
            cfg.phone_tier = value;
        } else if (key == "word_tier") {
            cfg.word_tier = value;
        } else if (key == "width") {
            cfg.plot.width = parse_double(value, key);
        } else if (key == "height") {
            cfg.plot.height = parse_double(value, key);
        } else if (key == "f1_min") {
            cfg.plot.f1_min = parse_double(value, key);
        } else if (key == "f1_max") {
            cfg.plot.f1_max = parse_double(value, key);
        } else if (key == "f2_min") {
            cfg.plot.f2_min = parse_double(value, key);
        } else if (key == "f2_max") {
            cfg.plot.f2_max = parse_double(value, key);
        } else if (key == "show_reference") {
            cfg.plot.show_reference = parse_bool(value, key);
        } else if (key == "show_hull") {
            cfg.plot.show_hull = parse_bool(value, key);
        } else if (key == "label_mode") {
            cfg.plot.label_mode = label_mode_from_string(value);
        } else if (key == "palette") {
            cfg.plot.palette = split(value, ',');
            for (auto& color : cfg.plot.palette) color = std::string(trim(color));
        } else {
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key +
                              "'");
        }
    }
    return cfg;
}

ToolConfig read_config(const std::filesystem::path& path) {
    return parse_config(read_text_file(path));
}

}  // namespace voweltrace
