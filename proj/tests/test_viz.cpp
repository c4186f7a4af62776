#include <doctest.h>

#include <cmath>
#include <map>

#include "testutil.hpp"
#include "voweltrace/error.hpp"
#include "voweltrace/textio.hpp"
#include "voweltrace/viz.hpp"

using namespace voweltrace;

namespace {

Trajectory grid_trajectory(int n_steps, bool with_reference) {
    std::vector<VowelSpace> spaces;
    for (int i = 0; i < n_steps; ++i) {
        VowelSpace space;
        space.step = i * 1000;
        for (VowelCategory v : all_vowel_categories()) {
            const int vi = static_cast<int>(v);
            VowelStats s;
            s.f1_mean = 300.0 + 40.0 * vi + 5.0 * i;
            s.f2_mean = 900.0 + 140.0 * vi + 45.0 * (vi % 3) - 8.0 * i;
            s.n = 5;
            space.points[v] = s;
        }
        spaces.push_back(std::move(space));
    }
    std::optional<VowelSpace> reference;
    if (with_reference) {
        VowelSpace ref;
        for (VowelCategory v : all_vowel_categories()) {
            const int vi = static_cast<int>(v);
            VowelStats s;
            s.f1_mean = 320.0 + 42.0 * vi;
            s.f2_mean = 950.0 + 135.0 * vi + 60.0 * (vi % 2);
            s.n = 1;
            ref.points[v] = s;
        }
        reference = std::move(ref);
    }
    return make_trajectory(std::move(spaces), std::move(reference));
}

std::vector<AccentAggregate> grid_aggregates(int n_accents, int n_steps) {
    std::vector<AccentAggregate> aggs;
    for (int a = 0; a < n_accents; ++a) {
        for (int s = 0; s < n_steps; ++s) {
            AccentAggregate agg;
            agg.accent = static_cast<Accent>(a);
            agg.step = s * 1000;
            double w = static_cast<double>(s + 1) / n_steps;
            agg.proportions = {0.3 * (1 - w), 0.2 * (1 - w), 0.1, 0.2 * w + 0.1,
                               0.3 * w + 0.1 * (1 - w)};
            double sum = 0;
            for (double p : agg.proportions) sum += p;
            for (double& p : agg.proportions) p /= sum;
            agg.n = 23;
            aggs.push_back(agg);
        }
    }
    return aggs;
}

size_t count_occurrences(const std::string& text, const std::string& needle) {
    size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

TEST_SUITE("viz.vowelspace") {
    TEST_CASE("11 categories over 8 steps give 11 polylines of 8 vertices") {
        Trajectory traj = grid_trajectory(8, false);
        std::string svg = render_vowel_space_svg(traj);
        auto polylines = testutil::svg_elements(svg, "polyline");
        REQUIRE(polylines.size() == 11);
        for (const auto& attrs : polylines) {
            std::string points;
            for (const auto& [name, value] : attrs)
                if (name == "points") points = value;
            REQUIRE_FALSE(points.empty());
            CHECK(count_occurrences(points, ",") == 8);
            CHECK(count_occurrences(points, " ") == 7);
        }
        CHECK(testutil::xml_check(svg).empty());
    }

    TEST_CASE("single-step trajectories draw markers, no polylines") {
        Trajectory traj = grid_trajectory(1, false);
        std::string svg = render_vowel_space_svg(traj);
        CHECK(testutil::svg_elements(svg, "polyline").empty());
        CHECK(testutil::svg_elements(svg, "circle", "pt").size() == 11);
    }

    TEST_CASE("reference-only render labels the lexical words") {
        Trajectory traj = grid_trajectory(0, true);
        std::string svg = render_vowel_space_svg(traj);
        for (VowelCategory v : all_vowel_categories())
            CHECK(svg.find(">" + std::string(lexical_word(v)) + "<") != std::string::npos);
        CHECK(testutil::svg_elements(svg, "polyline").empty());
        CHECK(testutil::xml_check(svg).empty());
    }

    TEST_CASE("empty trajectories are rejected") {
        Trajectory empty;
        CHECK_THROWS_AS(render_vowel_space_svg(empty), ArgumentError);
        Trajectory hidden_ref = grid_trajectory(0, true);
        PlotOptions opts;
        opts.show_reference = false;
        CHECK_THROWS_AS(render_vowel_space_svg(hidden_ref, opts), ArgumentError);
    }

    TEST_CASE("rendering is deterministic") {
        Trajectory traj = grid_trajectory(8, true);
        PlotOptions opts;
        opts.show_hull = true;
        CHECK(render_vowel_space_svg(traj, opts) == render_vowel_space_svg(traj, opts));
    }

    TEST_CASE("data outside the axis ranges expands the plot instead of clipping") {
        Trajectory traj = grid_trajectory(3, false);
        PlotOptions opts;
        opts.f1_min = 400;  // data starts at 300
        opts.f1_max = 500;
        opts.f2_min = 1000;
        opts.f2_max = 1200;
        std::string svg = render_vowel_space_svg(traj, opts);
        const double left = 70, top = 45;
        const double right_edge = opts.width - 150, bottom_edge = opts.height - 55;
        auto circles = testutil::svg_elements(svg, "circle", "pt");
        REQUIRE(circles.size() == 33);
        for (const auto& attrs : circles) {
            double cx = 0, cy = 0;
            for (const auto& [name, value] : attrs) {
                if (name == "cx") cx = std::stod(value);
                if (name == "cy") cy = std::stod(value);
            }
            CHECK(cx >= left);
            CHECK(cx <= right_edge);
            CHECK(cy >= top);
            CHECK(cy <= bottom_edge);
        }
    }

    TEST_CASE("step labels follow the label mode") {
        Trajectory traj = grid_trajectory(3, false);
        PlotOptions opts;
        opts.label_mode = LabelMode::step_number;
        std::string svg = render_vowel_space_svg(traj, opts);
        CHECK(count_occurrences(svg, "class=\"step-label\"") == 33);

        opts.label_mode = LabelMode::ipa;
        svg = render_vowel_space_svg(traj, opts);
        CHECK(count_occurrences(svg, "class=\"step-label\"") == 0);
        CHECK(svg.find(ipa_symbol(VowelCategory::FLEECE)) != std::string::npos);
        CHECK(testutil::xml_check(svg).empty());
    }

    TEST_CASE("hull outlines appear on demand") {
        Trajectory traj = grid_trajectory(2, true);
        PlotOptions opts;
        opts.show_hull = true;
        std::string svg = render_vowel_space_svg(traj, opts);
        CHECK(testutil::svg_elements(svg, "polygon", "hull").size() == 2);
        opts.show_hull = false;
        CHECK(testutil::svg_elements(render_vowel_space_svg(traj, opts), "polygon", "hull")
                  .empty());
    }

    TEST_CASE("short palettes are rejected") {
        Trajectory traj = grid_trajectory(1, false);
        PlotOptions opts;
        opts.palette = {"#111111", "#222222"};
        CHECK_THROWS_AS(render_vowel_space_svg(traj, opts), ConfigError);
    }
}

TEST_SUITE("viz.likert") {
    TEST_CASE("a one-aggregate chart is a single full-height band") {
        AccentAggregate agg;
        agg.step = 0;
        agg.accent = Accent::NZE;
        agg.proportions = {0, 0, 0, 0, 1};
        agg.n = 10;
        std::string svg = render_likert_svg(std::vector<AccentAggregate>{agg});
        auto bands = testutil::svg_elements(svg, "rect", "band");
        REQUIRE(bands.size() == 5);
        double full = 0;
        for (const auto& attrs : bands) {
            double h = 0;
            for (const auto& [name, value] : attrs)
                if (name == "height") h = std::stod(value);
            full = std::max(full, h);
        }
        const double plot_h = 720 - 50 - 84;  // default geometry
        CHECK(full == doctest::Approx(plot_h).epsilon(1e-6));
        CHECK(testutil::xml_check(svg).empty());
    }

    TEST_CASE("uniform proportions tile the bar in five equal bands") {
        AccentAggregate agg;
        agg.step = 0;
        agg.accent = Accent::GAE;
        agg.proportions = {0.2, 0.2, 0.2, 0.2, 0.2};
        agg.n = 5;
        std::string svg = render_likert_svg(std::vector<AccentAggregate>{agg});
        auto bands = testutil::svg_elements(svg, "rect", "band");
        REQUIRE(bands.size() == 5);
        const double plot_h = 720 - 50 - 84;
        double sum = 0;
        for (const auto& attrs : bands) {
            for (const auto& [name, value] : attrs)
                if (name == "height") {
                    double h = std::stod(value);
                    CHECK(h == doctest::Approx(plot_h / 5).epsilon(0.001));
                    sum += h;
                }
        }
        CHECK(std::abs(sum - plot_h) <= 0.5);
    }

    TEST_CASE("4 accents over 8 steps give 32 bars whose bands tile exactly") {
        auto aggs = grid_aggregates(4, 8);
        std::string svg = render_likert_svg(aggs);
        auto bands = testutil::svg_elements(svg, "rect", "band");
        REQUIRE(bands.size() == 32 * 5);

        // group bands by bar x position; each bar's heights must sum to
        // the bar height within half a pixel
        std::map<std::string, std::pair<double, double>> bars;  // x -> (sum h, min y)
        for (const auto& attrs : bands) {
            std::string x;
            double h = 0, y = 0;
            for (const auto& [name, value] : attrs) {
                if (name == "x") x = value;
                if (name == "height") h = std::stod(value);
                if (name == "y") y = std::stod(value);
            }
            auto& [sum, min_y] = bars[x];
            sum += h;
            min_y = bars[x].second == 0 ? y : std::min(min_y, y);
        }
        CHECK(bars.size() == 32);
        const double plot_h = 720 - 50 - 84;
        for (const auto& [x, agg] : bars) CHECK(std::abs(agg.first - plot_h) <= 0.5);
        CHECK(testutil::xml_check(svg).empty());

        for (const char* accent : {"GAE", "NZE", "AusE", "CanE"})
            CHECK(svg.find(">" + std::string(accent) + "<") != std::string::npos);
    }

    TEST_CASE("golden output stays byte-identical") {
        auto aggs = grid_aggregates(2, 4);
        std::string first = render_likert_svg(aggs);
        std::string second = render_likert_svg(aggs);
        CHECK(first == second);

        const std::filesystem::path golden =
            std::filesystem::path(VOWELTRACE_TEST_DATA_DIR) / "likert_golden.svg";
        REQUIRE(std::filesystem::exists(golden));
        CHECK(first == read_text_file(golden));
    }

    TEST_CASE("empty input is rejected") {
        CHECK_THROWS_AS(render_likert_svg(std::vector<AccentAggregate>{}), ArgumentError);
    }
}
