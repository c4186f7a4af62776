#include "voweltrace/viz.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "voweltrace/error.hpp"
#include "voweltrace/textio.hpp"

namespace voweltrace {

namespace {

std::string esc(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string num(double v) { return format_fixed(v, 2); }

std::vector<double> nice_ticks(double lo, double hi) {
    const double raw = (hi - lo) / 6.0;
    if (raw <= 0) return {lo};
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = 10.0 * mag;
    for (double m : {1.0, 2.0, 5.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> ticks;
    double t = std::ceil(lo / step) * step;
    while (t <= hi + 1e-9 * step) {
        ticks.push_back(t);
        t += step;
    }
    return ticks;
}

struct Range {
    double lo, hi;
};

// Expands [lo, hi] to cover the data with a 4% pad on exceeded sides.
Range expand(double lo, double hi, double data_lo, double data_hi, bool have_data) {
    if (!have_data) return {lo, hi};
    double new_lo = std::min(lo, data_lo), new_hi = std::max(hi, data_hi);
    const double span = new_hi - new_lo;
    if (data_lo < lo) new_lo = data_lo - 0.04 * span;
    if (data_hi > hi) new_hi = data_hi + 0.04 * span;
    return {new_lo, new_hi};
}

const std::string& color_for(const PlotOptions& options, int category_index) {
    const auto& palette = options.palette.empty() ? default_vowel_palette() : options.palette;
    if (static_cast<int>(palette.size()) < kVowelCategoryCount)
        throw ConfigError("palette has " + std::to_string(palette.size()) + " colors; " +
                          std::to_string(kVowelCategoryCount) + " needed");
    return palette[static_cast<size_t>(category_index)];
}

constexpr const char* kSvgStyle =
    "text{font-family:Helvetica,Arial,sans-serif;fill:#333;}"
    ".title{font-size:14px;font-weight:bold;}"
    ".axis{stroke:#333;stroke-width:1;}"
    ".grid{stroke:#ddd;stroke-width:0.5;}"
    ".tick{font-size:10px;}"
    ".axis-label{font-size:12px;}"
    ".step-label{font-size:8px;}"
    ".vowel-label{font-size:11px;font-weight:bold;}"
    ".legend{font-size:11px;}"
    ".traj{fill:none;stroke-width:1.5;}"
    ".hull{fill:none;stroke-width:1;stroke-dasharray:4 3;}";

}  // namespace

const std::vector<std::string>& default_vowel_palette() {
    static const std::vector<std::string> palette = {
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
        "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#004488",
    };
    return palette;
}

const std::array<std::string, 5>& likert_band_palette() {
    // dark brown ("not at all") to dark green ("completely")
    static const std::array<std::string, 5> palette = {
        "#8c510a", "#d8b365", "#f5f0dc", "#a6d96a", "#1a9850",
    };
    return palette;
}

std::string render_vowel_space_svg(const Trajectory& trajectory, const PlotOptions& options) {
    const bool draw_reference = options.show_reference && trajectory.reference.has_value();
    if (trajectory.spaces.empty() && !draw_reference)
        throw ArgumentError("render_vowel_space_svg: trajectory is empty");
    if (options.width <= 0 || options.height <= 0 || options.f1_min >= options.f1_max ||
        options.f2_min >= options.f2_max)
        throw ConfigError("degenerate plot dimensions or axis ranges");

    double d1_lo = 1e300, d1_hi = -1e300, d2_lo = 1e300, d2_hi = -1e300;
    bool have_data = false;
    auto scan = [&](const VowelSpace& space) {
        for (const auto& [v, stats] : space.points) {
            d1_lo = std::min(d1_lo, stats.f1_mean);
            d1_hi = std::max(d1_hi, stats.f1_mean);
            d2_lo = std::min(d2_lo, stats.f2_mean);
            d2_hi = std::max(d2_hi, stats.f2_mean);
            have_data = true;
        }
    };
    for (const VowelSpace& space : trajectory.spaces) scan(space);
    if (draw_reference) scan(*trajectory.reference);

    const Range f1 = expand(options.f1_min, options.f1_max, d1_lo, d1_hi, have_data);
    const Range f2 = expand(options.f2_min, options.f2_max, d2_lo, d2_hi, have_data);

    const double left = 70, right = 150, top = 45, bottom = 55;
    const double plot_w = options.width - left - right;
    const double plot_h = options.height - top - bottom;
    if (plot_w <= 0 || plot_h <= 0) throw ConfigError("plot area is degenerate");

    // vowel chart orientation: F2 grows leftward, F1 grows downward
    auto px = [&](double hz) { return left + (f2.hi - hz) / (f2.hi - f2.lo) * plot_w; };
    auto py = [&](double hz) { return top + (hz - f1.lo) / (f1.hi - f1.lo) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(options.width) +
           "\" height=\"" + num(options.height) + "\" viewBox=\"0 0 " + num(options.width) + " " +
           num(options.height) + "\">\n";
    svg += std::string("<style>") + kSvgStyle + "</style>\n";
    svg += "<rect width=\"" + num(options.width) + "\" height=\"" + num(options.height) +
           "\" fill=\"#ffffff\"/>\n";
    svg += "<text class=\"title\" x=\"" + num(left) + "\" y=\"24\">Vowel space over training steps</text>\n";

    for (double t : nice_ticks(f2.lo, f2.hi)) {
        const double x = px(t);
        svg += "<line class=\"grid\" x1=\"" + num(x) + "\" y1=\"" + num(top) + "\" x2=\"" + num(x) +
               "\" y2=\"" + num(top + plot_h) + "\"/>\n";
        svg += "<text class=\"tick\" x=\"" + num(x) + "\" y=\"" + num(top + plot_h + 14) +
               "\" text-anchor=\"middle\">" + format_fixed(t, 0) + "</text>\n";
    }
    for (double t : nice_ticks(f1.lo, f1.hi)) {
        const double y = py(t);
        svg += "<line class=\"grid\" x1=\"" + num(left) + "\" y1=\"" + num(y) + "\" x2=\"" +
               num(left + plot_w) + "\" y2=\"" + num(y) + "\"/>\n";
        svg += "<text class=\"tick\" x=\"" + num(left - 6) + "\" y=\"" + num(y + 3) +
               "\" text-anchor=\"end\">" + format_fixed(t, 0) + "</text>\n";
    }
    svg += "<rect class=\"axis\" x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" +
           num(plot_w) + "\" height=\"" + num(plot_h) + "\" fill=\"none\"/>\n";
    svg += "<text class=\"axis-label\" x=\"" + num(left + plot_w / 2) + "\" y=\"" +
           num(options.height - 16) + "\" text-anchor=\"middle\">F2 (Hz)</text>\n";
    svg += "<text class=\"axis-label\" transform=\"translate(18," + num(top + plot_h / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">F1 (Hz)</text>\n";

    const auto& categories = all_vowel_categories();
    for (int ci = 0; ci < kVowelCategoryCount; ++ci) {
        const VowelCategory v = categories[static_cast<size_t>(ci)];
        const std::string& color = color_for(options, ci);

        struct Pt {
            Step step;
            double x, y;
        };
        std::vector<Pt> pts;
        for (const VowelSpace& space : trajectory.spaces) {
            auto it = space.points.find(v);
            if (it == space.points.end()) continue;
            pts.push_back({space.step, px(it->second.f2_mean), py(it->second.f1_mean)});
        }

        if (pts.size() >= 2) {
            svg += "<polyline class=\"traj\" stroke=\"" + esc(color) + "\" points=\"";
            for (size_t i = 0; i < pts.size(); ++i) {
                if (i > 0) svg += " ";
                svg += num(pts[i].x) + "," + num(pts[i].y);
            }
            svg += "\"/>\n";
        }
        for (const Pt& p : pts) {
            svg += "<circle class=\"pt\" cx=\"" + num(p.x) + "\" cy=\"" + num(p.y) +
                   "\" r=\"3\" fill=\"" + esc(color) + "\"/>\n";
            if (options.label_mode == LabelMode::step_number)
                svg += "<text class=\"step-label\" x=\"" + num(p.x + 4) + "\" y=\"" +
                       num(p.y - 4) + "\">" + std::to_string(p.step) + "</text>\n";
        }
        if (!pts.empty() && options.label_mode != LabelMode::step_number) {
            const Pt& last = pts.back();
            std::string_view label =
                options.label_mode == LabelMode::ipa ? ipa_symbol(v) : lexical_word(v);
            svg += "<text class=\"vowel-label\" fill=\"" + esc(color) + "\" x=\"" +
                   num(last.x + 5) + "\" y=\"" + num(last.y - 5) + "\">" + esc(label) +
                   "</text>\n";
        }

        if (draw_reference) {
            auto it = trajectory.reference->points.find(v);
            if (it != trajectory.reference->points.end()) {
                const double x = px(it->second.f2_mean), y = py(it->second.f1_mean);
                std::string_view label = options.label_mode == LabelMode::ipa
                                             ? ipa_symbol(v)
                                             : lexical_word(v);
                svg += "<text class=\"vowel-label\" fill=\"" + esc(color) + "\" x=\"" + num(x) +
                       "\" y=\"" + num(y) + "\" text-anchor=\"middle\">" + esc(label) +
                       "</text>\n";
            }
        }
    }

    if (options.show_hull) {
        auto hull_polygon = [&](const VowelSpace& space, const char* stroke) {
            std::vector<Point2> pts;
            for (const auto& [v, stats] : space.points)
                pts.push_back({stats.f2_mean, stats.f1_mean});
            std::vector<Point2> hull = convex_hull(std::move(pts));
            if (hull.size() < 3) return;
            svg += std::string("<polygon class=\"hull\" stroke=\"") + stroke + "\" points=\"";
            for (size_t i = 0; i < hull.size(); ++i) {
                if (i > 0) svg += " ";
                svg += num(px(hull[i].x)) + "," + num(py(hull[i].y));
            }
            svg += "\"/>\n";
        };
        if (!trajectory.spaces.empty()) hull_polygon(trajectory.spaces.back(), "#b22222");
        if (draw_reference) hull_polygon(*trajectory.reference, "#228b22");
    }

    for (int ci = 0; ci < kVowelCategoryCount; ++ci) {
        const double lx = left + plot_w + 18, ly = top + 8 + 18.0 * ci;
        svg += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly - 8) +
               "\" width=\"10\" height=\"10\" fill=\"" + esc(color_for(options, ci)) + "\"/>\n";
        svg += "<text class=\"legend\" x=\"" + num(lx + 15) + "\" y=\"" + num(ly + 1) + "\">" +
               esc(lexical_word(categories[static_cast<size_t>(ci)])) + "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

std::string render_likert_svg(std::span<const AccentAggregate> aggregates,
                              const PlotOptions& options) {
    if (aggregates.empty()) throw ArgumentError("render_likert_svg: no aggregates");
    if (options.width <= 0 || options.height <= 0)
        throw ConfigError("degenerate plot dimensions");

    // accent groups in enum order, steps ascending within each
    std::map<Accent, std::vector<const AccentAggregate*>> groups;
    for (const AccentAggregate& a : aggregates) groups[a.accent].push_back(&a);
    for (auto& [accent, members] : groups)
        std::sort(members.begin(), members.end(),
                  [](const AccentAggregate* a, const AccentAggregate* b) { return a->step < b->step; });

    size_t n_bars = aggregates.size();
    const double left = 60, right = 30, top = 50, bottom = 84;
    const double plot_w = options.width - left - right;
    const double plot_h = options.height - top - bottom;
    if (plot_w <= 0 || plot_h <= 0) throw ConfigError("plot area is degenerate");
    const double group_gap = 22;
    const double bar_gap = 4;
    const double bar_w =
        (plot_w - group_gap * (static_cast<double>(groups.size()) - 1) -
         bar_gap * static_cast<double>(n_bars - groups.size())) /
        static_cast<double>(n_bars);
    if (bar_w <= 0) throw ConfigError("too many bars for the plot width");
    const double base_y = top + plot_h;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(options.width) +
           "\" height=\"" + num(options.height) + "\" viewBox=\"0 0 " + num(options.width) + " " +
           num(options.height) + "\">\n";
    svg += std::string("<style>") + kSvgStyle + "</style>\n";
    svg += "<rect width=\"" + num(options.width) + "\" height=\"" + num(options.height) +
           "\" fill=\"#ffffff\"/>\n";
    svg += "<text class=\"title\" x=\"" + num(left) + "\" y=\"24\">Accent ratings by training step</text>\n";

    for (int pct = 0; pct <= 100; pct += 25) {
        const double y = base_y - plot_h * pct / 100.0;
        svg += "<line class=\"grid\" x1=\"" + num(left) + "\" y1=\"" + num(y) + "\" x2=\"" +
               num(left + plot_w) + "\" y2=\"" + num(y) + "\"/>\n";
        svg += "<text class=\"tick\" x=\"" + num(left - 6) + "\" y=\"" + num(y + 3) +
               "\" text-anchor=\"end\">" + std::to_string(pct) + "%</text>\n";
    }

    double x = left;
    for (const auto& [accent, members] : groups) {
        const double group_start = x;
        for (const AccentAggregate* agg : members) {
            // bands tile the bar bottom-to-top, rating 0 first
            double cum = 0;
            for (size_t k = 0; k < 5; ++k) {
                const double y0 = base_y - plot_h * cum;
                cum += agg->proportions[k];
                const double y1 = base_y - plot_h * cum;
                svg += "<rect class=\"band\" x=\"" + num(x) + "\" y=\"" + num(y1) +
                       "\" width=\"" + num(bar_w) + "\" height=\"" + num(y0 - y1) +
                       "\" fill=\"" + likert_band_palette()[k] + "\"/>\n";
            }
            svg += "<text class=\"tick\" x=\"" + num(x + bar_w / 2) + "\" y=\"" +
                   num(base_y + 12) + "\" text-anchor=\"middle\">" + std::to_string(agg->step) +
                   "</text>\n";
            x += bar_w + bar_gap;
        }
        const double group_end = x - bar_gap;
        svg += "<text class=\"axis-label\" x=\"" + num((group_start + group_end) / 2) +
               "\" y=\"" + num(top - 8) + "\" text-anchor=\"middle\">" +
               esc(to_string(accent)) + "</text>\n";
        x += group_gap - bar_gap;
    }

    svg += "<line class=\"axis\" x1=\"" + num(left) + "\" y1=\"" + num(base_y) + "\" x2=\"" +
           num(left + plot_w) + "\" y2=\"" + num(base_y) + "\"/>\n";
    svg += "<text class=\"axis-label\" x=\"" + num(left + plot_w / 2) + "\" y=\"" +
           num(base_y + 28) + "\" text-anchor=\"middle\">training step</text>\n";

    static constexpr const char* kBandNames[5] = {
        "0 not at all", "1", "2", "3", "4 completely",
    };
    double lx = left;
    const double ly = options.height - 18;
    for (size_t k = 0; k < 5; ++k) {
        svg += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly - 9) +
               "\" width=\"10\" height=\"10\" fill=\"" + likert_band_palette()[k] + "\"/>\n";
        svg += "<text class=\"legend\" x=\"" + num(lx + 14) + "\" y=\"" + num(ly) + "\">" +
               esc(kBandNames[k]) + "</text>\n";
        lx += 14.0 + 10.0 * static_cast<double>(std::string_view(kBandNames[k]).size());
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace voweltrace
