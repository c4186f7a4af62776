#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "voweltrace/audio.hpp"

namespace voweltrace {

struct FormantConfig {
    double max_formant_hz = 5500;  // analysis ceiling (female-voice default)
    int n_formants = 5;
    double window_s = 0.025;       // effective length; physical window is twice this
    double time_step_s = 0.00625;  // quarter of the window
    double preemph_from_hz = 50;
    // Resonances wider than this are envelope-filling poles, not spectral
    // maxima, and are not kept as formants. 0 disables the cap.
    double max_bandwidth_hz = 400;
};

struct Formant {
    double frequency_hz = 0;
    double bandwidth_hz = 0;
};

struct FormantFrame {
    double time_s = 0;  // frame center
    std::vector<Formant> formants;  // ascending frequency
};

struct FormantTrack {
    std::vector<FormantFrame> frames;
    FormantConfig config;
    std::string clip_ref;
    std::vector<std::string> warnings;
};

struct BurgResult {
    std::vector<double> coefficients;  // a1..a_order for x[n] ~ sum a_k x[n-k]
    double residual_energy = 0;        // mean squared prediction error
};

// Burg's forward-backward recursion. All reflection coefficients have
// magnitude < 1, so the fitted predictor is stable. An all-zero frame
// yields zero coefficients and zero residual.
BurgResult burg(std::span<const double> frame, int order);

// Roots of 1 - sum a_k z^-k via the balanced companion matrix.
std::vector<std::complex<double>> lpc_roots(std::span<const double> coefficients);

// Upper-half-plane roots with 0 < |r| < 1 become resonances:
//   frequency = angle(r) * sample_rate / (2*pi)
//   bandwidth = -ln|r| * sample_rate / pi
// sorted ascending; frequencies <= 50 Hz or >= sample_rate/2 - 50 Hz
// are discarded.
std::vector<Formant> lpc_to_formants(std::span<const double> coefficients, double sample_rate);

// Resamples to 2*max_formant_hz, pre-emphasizes, then runs Burg LPC of
// order 2*n_formants on Gaussian-windowed frames (physical length
// 2*window_s) spaced time_step_s apart. Per frame, resonances wider
// than max_bandwidth_hz are dropped and at most n_formants entries are
// kept. A clip shorter than one window yields an empty track with a
// warning record.
FormantTrack track_formants(const AudioClip& clip, const FormantConfig& config = {});
FormantTrack track_formants_serial(const AudioClip& clip, const FormantConfig& config = {});

// CSV dump: time_s,f1_hz,b1_hz,...,fN_hz,bN_hz with empty fields for
// missing formants (N = config.n_formants).
std::string track_to_csv(const FormantTrack& track);

}  // namespace voweltrace
