#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "voweltrace/formant.hpp"
#include "voweltrace/textgrid.hpp"
#include "voweltrace/vowel.hpp"

namespace voweltrace {

using Step = std::int64_t;  // training checkpoint step

// Nominal adult formant ranges; tokens outside are flagged, not dropped.
inline constexpr double kF1RangeLoHz = 200, kF1RangeHiHz = 900;
inline constexpr double kF2RangeLoHz = 600, kF2RangeHiHz = 2600;

bool in_nominal_range(double f1_hz, double f2_hz);

struct VowelToken {
    VowelCategory vowel = VowelCategory::STRUT;
    double f1_hz = 0;
    double f2_hz = 0;
    Step step = 0;
    std::string source;
    bool out_of_range = false;
};

VowelToken make_token(VowelCategory vowel, double f1_hz, double f2_hz, Step step,
                      std::string source = "");

struct VowelStats {
    double f1_mean = 0;
    double f2_mean = 0;
    int n = 0;
    double f1_sd = 0;
    double f2_sd = 0;
    bool sd_degenerate = false;  // single token: SD reported as 0 by convention
};

struct VowelSpace {
    Step step = 0;
    std::map<VowelCategory, VowelStats> points;
    std::vector<std::string> warnings;
};

enum class MeasureStrategy { middle_half_mean, midpoint };

// middle_half_mean (default): mean F1/F2 over frames in the central 50%
// of the segment, skipping frames with fewer than 2 formants.
// midpoint: the qualifying frame nearest the segment center.
// Returns nullopt when no frame qualifies.
std::optional<std::pair<double, double>> measure_vowel(
    const FormantTrack& track, const VowelSegment& segment,
    MeasureStrategy strategy = MeasureStrategy::middle_half_mean);

// Per-category mean and sample SD; categories with no tokens are omitted.
VowelSpace build_space(std::span<const VowelToken> tokens, Step step);

// --- 2-D geometry on the (F2, F1) plane ---

struct Point2 {
    double x = 0;
    double y = 0;
};

// Counter-clockwise hull vertices; collinear boundary points dropped.
// Fewer than 3 non-collinear inputs give a degenerate (size < 3) result.
std::vector<Point2> convex_hull(std::vector<Point2> points);
double polygon_area(std::span<const Point2> polygon);  // shoelace
double hull_area(std::span<const Point2> points);

double hull_area(const VowelSpace& space);

// Categories whose (F2, F1) means are hull vertices. A degenerate hull
// (all points collinear) yields the empty set; *degenerate reports it.
std::set<VowelCategory> point_vowels(const VowelSpace& space, bool* degenerate = nullptr);

struct SpaceDistance {
    std::map<VowelCategory, double> per_vowel;  // Euclidean Hz over shared categories
    double mean = 0;
    std::vector<VowelCategory> only_in_space;
    std::vector<VowelCategory> only_in_reference;
};

SpaceDistance distance_to_reference(const VowelSpace& space, const VowelSpace& reference);

struct Trajectory {
    std::vector<VowelSpace> spaces;  // strictly increasing step
    std::optional<VowelSpace> reference;
};

// Validates strict step ordering.
Trajectory make_trajectory(std::vector<VowelSpace> spaces,
                           std::optional<VowelSpace> reference = std::nullopt);

struct ConvergencePoint {
    Step step = 0;
    double mean_dist_hz = 0;
    double hull_area_hz2 = 0;
};

// Distance to the reference and hull area at every step. Requires
// trajectory.reference.
std::vector<ConvergencePoint> convergence_curve(const Trajectory& trajectory);

// CSV: step,vowel,n_tokens,f1_hz_mean,f2_hz_mean,f1_hz_sd,f2_hz_sd
std::string spaces_to_csv(std::span<const VowelSpace> spaces);
std::vector<VowelSpace> spaces_from_csv(const std::string& text);

// CSV: step,mean_dist_hz,hull_area_hz2
std::string convergence_to_csv(std::span<const ConvergencePoint> curve);

}  // namespace voweltrace
