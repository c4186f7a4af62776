#include "voweltrace/formant.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "voweltrace/error.hpp"
#include "voweltrace/textio.hpp"

namespace voweltrace {

namespace {

constexpr double kPi = std::numbers::pi;

// Margin below which (and above Nyquist minus which) resonances are
// discarded as non-formants.
constexpr double kEdgeMarginHz = 50.0;

void validate(const FormantConfig& cfg) {
    if (cfg.max_formant_hz <= 0) throw ArgumentError("max_formant_hz must be positive");
    if (cfg.n_formants < 1) throw ArgumentError("n_formants must be at least 1");
    if (cfg.window_s <= 0) throw ArgumentError("window_s must be positive");
    if (cfg.time_step_s <= 0) throw ArgumentError("time_step_s must be positive");
    if (cfg.preemph_from_hz < 0) throw ArgumentError("preemph_from_hz must be non-negative");
    if (cfg.max_bandwidth_hz < 0) throw ArgumentError("max_bandwidth_hz must be non-negative");
}

// Parlett-Reinsch balancing (diagonal similarity, radix-2 scaling);
// leaves eigenvalues unchanged while shrinking the norm imbalance.
void balance(Eigen::MatrixXd& m) {
    const auto n = m.rows();
    constexpr double radix = 2.0, radix_sq = 4.0;
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double col = 0, row = 0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                col += std::abs(m(j, i));
                row += std::abs(m(i, j));
            }
            if (col == 0 || row == 0) continue;
            double g = row / radix, f = 1.0, s = col + row;
            while (col < g) {
                f *= radix;
                col *= radix_sq;
            }
            g = row * radix;
            while (col > g) {
                f /= radix;
                col /= radix_sq;
            }
            if ((col + row) / f < 0.95 * s) {
                done = false;
                m.row(i) /= f;
                m.col(i) *= f;
            }
        }
    }
}

}  // namespace

BurgResult burg(std::span<const double> frame, int order) {
    const auto n = static_cast<std::int64_t>(frame.size());
    if (order < 0) throw ArgumentError("burg: order must be non-negative");
    if (n <= order)
        throw ArgumentError("burg: frame length (" + std::to_string(n) +
                            ") must exceed order (" + std::to_string(order) + ")");

    BurgResult result;
    result.coefficients.assign(static_cast<size_t>(order), 0.0);

    double ms = 0;
    for (double x : frame) ms += x * x;
    ms /= static_cast<double>(n);
    result.residual_energy = ms;
    if (order == 0 || ms == 0.0) return result;

    // alpha: prediction-error filter A(z) = 1 + sum alpha_k z^-k,
    // so a_k = -alpha_k.
    std::vector<double> alpha(static_cast<size_t>(order) + 1, 0.0);
    std::vector<double> prev(alpha.size());
    std::vector<double> fwd(frame.begin(), frame.end());
    std::vector<double> bwd(frame.begin(), frame.end());

    for (int m = 1; m <= order; ++m) {
        double num = 0, den = 0;
        for (std::int64_t i = m; i < n; ++i) {
            num += fwd[i] * bwd[i - 1];
            den += fwd[i] * fwd[i] + bwd[i - 1] * bwd[i - 1];
        }
        if (den <= 0.0) break;
        double k = -2.0 * num / den;
        // |k| < 1 holds in exact arithmetic; guard the degenerate case
        // so the predictor stays strictly stable.
        constexpr double kMax = 1.0 - 1e-12;
        if (k > kMax) k = kMax;
        if (k < -kMax) k = -kMax;

        prev = alpha;
        alpha[static_cast<size_t>(m)] = k;
        for (int i = 1; i < m; ++i)
            alpha[static_cast<size_t>(i)] = prev[static_cast<size_t>(i)] +
                                            k * prev[static_cast<size_t>(m - i)];

        for (std::int64_t i = n - 1; i >= m; --i) {
            double fi = fwd[i], bi = bwd[i - 1];
            fwd[i] = fi + k * bi;
            bwd[i] = bi + k * fi;
        }
        ms *= 1.0 - k * k;
    }

    for (int i = 1; i <= order; ++i)
        result.coefficients[static_cast<size_t>(i - 1)] = -alpha[static_cast<size_t>(i)];
    result.residual_energy = ms;
    return result;
}

std::vector<std::complex<double>> lpc_roots(std::span<const double> coefficients) {
    const auto p = static_cast<Eigen::Index>(coefficients.size());
    if (p == 0) return {};
    if (p == 1) return {std::complex<double>(coefficients[0], 0.0)};

    // roots of z^p - a1 z^(p-1) - ... - ap: companion matrix with the
    // coefficient column last.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index i = 0; i + 1 < p; ++i) companion(i + 1, i) = 1.0;
    for (Eigen::Index i = 0; i < p; ++i)
        companion(i, p - 1) = coefficients[static_cast<size_t>(p - 1 - i)];

    balance(companion);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericError("root finding did not converge for polynomial degree " +
                           std::to_string(p));

    std::vector<std::complex<double>> roots(static_cast<size_t>(p));
    for (Eigen::Index i = 0; i < p; ++i) roots[static_cast<size_t>(i)] = solver.eigenvalues()[i];
    return roots;
}

std::vector<Formant> lpc_to_formants(std::span<const double> coefficients, double sample_rate) {
    if (sample_rate <= 0) throw ArgumentError("lpc_to_formants: sample rate must be positive");
    std::vector<Formant> formants;
    for (const auto& r : lpc_roots(coefficients)) {
        if (r.imag() <= 0) continue;  // keep one of each conjugate pair
        double radius = std::abs(r);
        if (radius <= 0.0 || radius >= 1.0) continue;
        double frequency = std::atan2(r.imag(), r.real()) * sample_rate / (2.0 * kPi);
        if (frequency <= kEdgeMarginHz || frequency >= sample_rate / 2.0 - kEdgeMarginHz) continue;
        formants.push_back({frequency, -std::log(radius) * sample_rate / kPi});
    }
    std::sort(formants.begin(), formants.end(),
              [](const Formant& a, const Formant& b) { return a.frequency_hz < b.frequency_hz; });
    return formants;
}

namespace {

// Praat-convention Gaussian: near-zero at the physical window edges,
// effective (energy) width about half the physical length.
std::vector<double> gaussian_window(std::int64_t length) {
    std::vector<double> w(static_cast<size_t>(length));
    const double edge = std::exp(-12.0);
    const double mid = 0.5 * static_cast<double>(length - 1);
    const double span = static_cast<double>(length + 1);
    for (std::int64_t i = 0; i < length; ++i) {
        double x = (static_cast<double>(i) - mid) / span;
        w[static_cast<size_t>(i)] = (std::exp(-48.0 * x * x) - edge) / (1.0 - edge);
    }
    return w;
}

template <bool Parallel>
FormantTrack track_impl(const AudioClip& clip, const FormantConfig& cfg) {
    validate(cfg);
    if (clip.samples.empty()) throw ArgumentError("track_formants: clip is empty");

    FormantTrack track;
    track.config = cfg;
    track.clip_ref = clip.source_path;

    const int analysis_rate = static_cast<int>(std::llround(2.0 * cfg.max_formant_hz));
    AudioClip work = clip.sample_rate == analysis_rate
                         ? clip
                         : (Parallel ? resample(clip, analysis_rate)
                                     : resample_serial(clip, analysis_rate));
    work = preemphasize(work, cfg.preemph_from_hz);

    const double dt = 1.0 / analysis_rate;
    const double duration = static_cast<double>(work.samples.size()) * dt;
    const double physical_window_s = 2.0 * cfg.window_s;
    const auto half = static_cast<std::int64_t>(std::floor(cfg.window_s * analysis_rate));
    const std::int64_t window_len = 2 * half + 1;

    const auto n_frames = static_cast<std::int64_t>(
        std::floor((duration - physical_window_s) / cfg.time_step_s + 1e-9)) + 1;
    if (n_frames < 1 || window_len > static_cast<std::int64_t>(work.samples.size())) {
        track.warnings.push_back("clip shorter than one analysis window (" +
                                 format_fixed(physical_window_s, 3) + " s); no frames analyzed");
        return track;
    }

    // frame centers placed symmetrically within the clip
    const double t1 =
        0.5 * duration - 0.5 * static_cast<double>(n_frames) * cfg.time_step_s + 0.5 * cfg.time_step_s;
    const std::vector<double> window = gaussian_window(window_len);
    const int order = 2 * cfg.n_formants;
    const auto n_samples = static_cast<std::int64_t>(work.samples.size());

    track.frames.resize(static_cast<size_t>(n_frames));

#pragma omp parallel for schedule(dynamic, 8) if (Parallel)
    for (std::int64_t f = 0; f < n_frames; ++f) {
        const double t = t1 + static_cast<double>(f) * cfg.time_step_s;
        const auto center = static_cast<std::int64_t>(std::llround(t * analysis_rate));

        std::vector<double> frame(static_cast<size_t>(window_len), 0.0);
        double mean = 0;
        for (std::int64_t j = 0; j < window_len; ++j) {
            std::int64_t idx = center - half + j;
            if (idx >= 0 && idx < n_samples) frame[static_cast<size_t>(j)] = work.samples[idx];
            mean += frame[static_cast<size_t>(j)];
        }
        mean /= static_cast<double>(window_len);
        for (std::int64_t j = 0; j < window_len; ++j)
            frame[static_cast<size_t>(j)] = (frame[static_cast<size_t>(j)] - mean) *
                                            window[static_cast<size_t>(j)];

        BurgResult lp = burg(frame, order);
        std::vector<Formant> formants = lpc_to_formants(lp.coefficients, analysis_rate);
        if (cfg.max_bandwidth_hz > 0)
            std::erase_if(formants, [&](const Formant& fm) {
                return fm.bandwidth_hz > cfg.max_bandwidth_hz;
            });
        if (static_cast<int>(formants.size()) > cfg.n_formants)
            formants.resize(static_cast<size_t>(cfg.n_formants));

        track.frames[static_cast<size_t>(f)] = FormantFrame{t, std::move(formants)};
    }
    return track;
}

}  // namespace

FormantTrack track_formants(const AudioClip& clip, const FormantConfig& config) {
    return track_impl<true>(clip, config);
}

FormantTrack track_formants_serial(const AudioClip& clip, const FormantConfig& config) {
    return track_impl<false>(clip, config);
}

std::string track_to_csv(const FormantTrack& track) {
    std::string out = "time_s";
    for (int i = 1; i <= track.config.n_formants; ++i) {
        out += ",f" + std::to_string(i) + "_hz,b" + std::to_string(i) + "_hz";
    }
    out += "\n";
    for (const FormantFrame& frame : track.frames) {
        out += format_fixed(frame.time_s, 6);
        for (int i = 0; i < track.config.n_formants; ++i) {
            if (i < static_cast<int>(frame.formants.size())) {
                out += "," + format_fixed(frame.formants[static_cast<size_t>(i)].frequency_hz, 3);
                out += "," + format_fixed(frame.formants[static_cast<size_t>(i)].bandwidth_hz, 3);
            } else {
                out += ",,";
            }
        }
        out += "\n";
    }
    return out;
}

}  // namespace voweltrace
