#include "voweltrace/vowelspace.hpp"

#include <algorithm>
#include <cmath>

#include "voweltrace/error.hpp"
#include "voweltrace/textio.hpp"

namespace voweltrace {

bool in_nominal_range(double f1_hz, double f2_hz) {
    return f1_hz >= kF1RangeLoHz && f1_hz <= kF1RangeHiHz && f2_hz >= kF2RangeLoHz &&
           f2_hz <= kF2RangeHiHz;
}

VowelToken make_token(VowelCategory vowel, double f1_hz, double f2_hz, Step step,
                      std::string source) {
    if (f1_hz <= 0 || f2_hz <= 0) throw ArgumentError("vowel token formants must be positive");
    VowelToken token;
    token.vowel = vowel;
    token.f1_hz = f1_hz;
    token.f2_hz = f2_hz;
    token.step = step;
    token.source = std::move(source);
    token.out_of_range = !in_nominal_range(f1_hz, f2_hz);
    return token;
}

std::optional<std::pair<double, double>> measure_vowel(const FormantTrack& track,
                                                       const VowelSegment& segment,
                                                       MeasureStrategy strategy) {
    if (segment.end <= segment.start) throw ArgumentError("segment has no duration");
    if (track.frames.empty()) return std::nullopt;
    const double track_start = track.frames.front().time_s;
    const double track_end = track.frames.back().time_s;
    if (segment.end < track_start || segment.start > track_end)
        throw RangeError("segment [" + format_fixed(segment.start, 3) + ", " +
                         format_fixed(segment.end, 3) + "] s lies outside the track range [" +
                         format_fixed(track_start, 3) + ", " + format_fixed(track_end, 3) + "] s");

    const auto qualifies = [](const FormantFrame& f) { return f.formants.size() >= 2; };

    if (strategy == MeasureStrategy::midpoint) {
        const double center = 0.5 * (segment.start + segment.end);
        const FormantFrame* best = nullptr;
        for (const FormantFrame& f : track.frames) {
            if (f.time_s < segment.start || f.time_s > segment.end || !qualifies(f)) continue;
            if (best == nullptr ||
                std::abs(f.time_s - center) < std::abs(best->time_s - center))
                best = &f;
        }
        if (best == nullptr) return std::nullopt;
        return std::make_pair(best->formants[0].frequency_hz, best->formants[1].frequency_hz);
    }

    // middle-half mean: central 50% of the segment
    const double quarter = 0.25 * (segment.end - segment.start);
    const double lo = segment.start + quarter;
    const double hi = segment.end - quarter;
    double f1 = 0, f2 = 0;
    int n = 0;
    for (const FormantFrame& f : track.frames) {
        if (f.time_s < lo || f.time_s > hi || !qualifies(f)) continue;
        f1 += f.formants[0].frequency_hz;
        f2 += f.formants[1].frequency_hz;
        ++n;
    }
    if (n == 0) return std::nullopt;
    return std::make_pair(f1 / n, f2 / n);
}

VowelSpace build_space(std::span<const VowelToken> tokens, Step step) {
    VowelSpace space;
    space.step = step;
    if (tokens.empty()) {
        space.warnings.push_back("no tokens; empty vowel space");
        return space;
    }
    for (const VowelToken& t : tokens)
        if (t.step != step)
            throw ArgumentError("token at step " + std::to_string(t.step) +
                                " mixed into space for step " + std::to_string(step));

    for (VowelCategory v : all_vowel_categories()) {
        double s1 = 0, s2 = 0;
        int n = 0;
        for (const VowelToken& t : tokens) {
            if (t.vowel != v) continue;
            s1 += t.f1_hz;
            s2 += t.f2_hz;
            ++n;
        }
        if (n == 0) continue;
        VowelStats stats;
        stats.n = n;
        stats.f1_mean = s1 / n;
        stats.f2_mean = s2 / n;
        if (n > 1) {
            double q1 = 0, q2 = 0;
            for (const VowelToken& t : tokens) {
                if (t.vowel != v) continue;
                q1 += (t.f1_hz - stats.f1_mean) * (t.f1_hz - stats.f1_mean);
                q2 += (t.f2_hz - stats.f2_mean) * (t.f2_hz - stats.f2_mean);
            }
            stats.f1_sd = std::sqrt(q1 / (n - 1));
            stats.f2_sd = std::sqrt(q2 / (n - 1));
        } else {
            stats.sd_degenerate = true;  // SD of one token reported as 0
        }
        space.points[v] = stats;
    }
    return space;
}

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::vector<Point2> convex_hull(std::vector<Point2> points) {
    std::sort(points.begin(), points.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Point2& a, const Point2& b) {
                                 return a.x == b.x && a.y == b.y;
                             }),
                 points.end());
    const size_t n = points.size();
    if (n < 3) return points;

    // monotone chain; strict turns drop collinear boundary points
    std::vector<Point2> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
        hull[k++] = points[i];
    }
    for (size_t i = n - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);  // last point repeats the first
    return hull;
}

double polygon_area(std::span<const Point2> polygon) {
    if (polygon.size() < 3) return 0.0;
    double twice = 0;
    for (size_t i = 0; i < polygon.size(); ++i) {
        const Point2& a = polygon[i];
        const Point2& b = polygon[(i + 1) % polygon.size()];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * std::abs(twice);
}

double hull_area(std::span<const Point2> points) {
    return polygon_area(convex_hull(std::vector<Point2>(points.begin(), points.end())));
}

namespace {

std::vector<Point2> space_points(const VowelSpace& space) {
    std::vector<Point2> pts;
    pts.reserve(space.points.size());
    for (const auto& [v, stats] : space.points) pts.push_back({stats.f2_mean, stats.f1_mean});
    return pts;
}

}  // namespace

double hull_area(const VowelSpace& space) { return hull_area(space_points(space)); }

std::set<VowelCategory> point_vowels(const VowelSpace& space, bool* degenerate) {
    if (space.points.size() < 3)
        throw ArgumentError("point_vowels requires at least 3 vowel categories");
    std::vector<Point2> hull = convex_hull(space_points(space));
    if (degenerate != nullptr) *degenerate = hull.size() < 3;
    std::set<VowelCategory> result;
    if (hull.size() < 3) return result;  // collinear: no vowel space spanned
    for (const auto& [v, stats] : space.points) {
        for (const Point2& p : hull) {
            if (p.x == stats.f2_mean && p.y == stats.f1_mean) {
                result.insert(v);
                break;
            }
        }
    }
    return result;
}

SpaceDistance distance_to_reference(const VowelSpace& space, const VowelSpace& reference) {
    SpaceDistance out;
    double sum = 0;
    for (const auto& [v, stats] : space.points) {
        auto it = reference.points.find(v);
        if (it == reference.points.end()) {
            out.only_in_space.push_back(v);
            continue;
        }
        double d1 = stats.f1_mean - it->second.f1_mean;
        double d2 = stats.f2_mean - it->second.f2_mean;
        double d = std::sqrt(d1 * d1 + d2 * d2);
        out.per_vowel[v] = d;
        sum += d;
    }
    for (const auto& [v, stats] : reference.points)
        if (!space.points.contains(v)) out.only_in_reference.push_back(v);
    if (out.per_vowel.empty())
        throw Error("vowel spaces share no categories; nothing to compare");
    out.mean = sum / static_cast<double>(out.per_vowel.size());
    return out;
}

Trajectory make_trajectory(std::vector<VowelSpace> spaces, std::optional<VowelSpace> reference) {
    for (size_t i = 1; i < spaces.size(); ++i)
        if (spaces[i].step <= spaces[i - 1].step)
            throw ArgumentError("trajectory steps must be strictly increasing (step " +
                                std::to_string(spaces[i].step) + " after " +
                                std::to_string(spaces[i - 1].step) + ")");
    return Trajectory{std::move(spaces), std::move(reference)};
}

std::vector<ConvergencePoint> convergence_curve(const Trajectory& trajectory) {
    if (!trajectory.reference)
        throw ConfigError("convergence_curve requires a reference vowel space");
    std::vector<ConvergencePoint> curve;
    curve.reserve(trajectory.spaces.size());
    for (const VowelSpace& space : trajectory.spaces) {
        SpaceDistance d = distance_to_reference(space, *trajectory.reference);
        curve.push_back({space.step, d.mean, hull_area(space)});
    }
    return curve;
}

std::string spaces_to_csv(std::span<const VowelSpace> spaces) {
    std::string out = "step,vowel,n_tokens,f1_hz_mean,f2_hz_mean,f1_hz_sd,f2_hz_sd\n";
    for (const VowelSpace& space : spaces) {
        for (VowelCategory v : all_vowel_categories()) {
            auto it = space.points.find(v);
            if (it == space.points.end()) continue;
            const VowelStats& s = it->second;
            out += std::to_string(space.step);
            out += ",";
            out += lexical_word(v);
            out += "," + std::to_string(s.n);
            out += "," + format_fixed(s.f1_mean, 3);
            out += "," + format_fixed(s.f2_mean, 3);
            out += "," + format_fixed(s.f1_sd, 3);
            out += "," + format_fixed(s.f2_sd, 3);
            out += "\n";
        }
    }
    return out;
}

std::vector<VowelSpace> spaces_from_csv(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw FormatError("empty vowel space CSV");
    if (trim(lines[0]) != "step,vowel,n_tokens,f1_hz_mean,f2_hz_mean,f1_hz_sd,f2_hz_sd")
        throw FormatError("unexpected vowel space CSV header: " + std::string(lines[0]));

    std::map<Step, VowelSpace> by_step;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        auto fields = split(lines[i], ',');
        if (fields.size() != 7)
            throw FormatError("vowel space CSV row " + std::to_string(i + 1) + ": expected 7 fields");
        Step step = parse_int(fields[0], "step");
        auto vowel = vowel_from_lexical_word(trim(fields[1]));
        if (!vowel)
            throw ValidationError("vowel space CSV row " + std::to_string(i + 1) +
                                  ": unknown vowel '" + fields[1] + "'");
        VowelStats stats;
        stats.n = static_cast<int>(parse_int(fields[2], "n_tokens"));
        stats.f1_mean = parse_double(fields[3], "f1_hz_mean");
        stats.f2_mean = parse_double(fields[4], "f2_hz_mean");
        stats.f1_sd = parse_double(fields[5], "f1_hz_sd");
        stats.f2_sd = parse_double(fields[6], "f2_hz_sd");
        stats.sd_degenerate = stats.n == 1;
        VowelSpace& space = by_step[step];
        space.step = step;
        space.points[*vowel] = stats;
    }
    std::vector<VowelSpace> spaces;
    spaces.reserve(by_step.size());
    for (auto& [step, space] : by_step) spaces.push_back(std::move(space));
    return spaces;
}

std::string convergence_to_csv(std::span<const ConvergencePoint> curve) {
    std::string out = "step,mean_dist_hz,hull_area_hz2\n";
    for (const ConvergencePoint& p : curve) {
        out += std::to_string(p.step);
        out += "," + format_fixed(p.mean_dist_hz, 3);
        out += "," + format_fixed(p.hull_area_hz2, 3);
        out += "\n";
    }
    return out;
}

}  // namespace voweltrace
