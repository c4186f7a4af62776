#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "voweltrace/audio.hpp"

namespace testutil {

// Self-deleting scratch directory under the system temp path.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

// Deterministic RNG independent of the standard library distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}
    std::uint64_t next_u64();
    double uniform();             // [0, 1)
    double uniform(double lo, double hi);
    double gaussian();            // standard normal via Box-Muller

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0;
};

// x[n] = sum_k a[k] x[n-k-1] + e[n], unit-variance white e; the first
// `burn_in` samples are discarded.
std::vector<double> simulate_ar(const std::vector<double>& a, std::size_t n, Rng& rng,
                                std::size_t burn_in = 1000);

// Impulse-train source (f0) through cascaded two-pole resonators; the
// reference synthesis for formant-recovery oracles. Peak-normalized to
// `amplitude`.
voweltrace::AudioClip synth_vowel(const std::vector<std::pair<double, double>>& resonators,
                                  double f0_hz, int sample_rate, double seconds,
                                  double amplitude = 0.5);

// Radix-2 FFT (n must be a power of two), plus a Hann-windowed
// magnitude spectrum and Welch power spectrum for measurement oracles.
void fft(std::vector<std::complex<double>>& data);
std::vector<double> magnitude_spectrum(const std::vector<double>& signal, std::size_t n_fft);
std::vector<double> welch_psd(const std::vector<double>& signal, std::size_t segment,
                              std::size_t hop);

// Frequency (Hz) of the largest spectrum bin.
double dominant_frequency(const std::vector<double>& signal, int sample_rate, std::size_t n_fft);

// Minimal XML well-formedness check: tag nesting, attribute quoting,
// no stray '<'/'>' in text. Returns an empty string when well-formed,
// otherwise a description of the first problem.
std::string xml_check(const std::string& text);

// All values of `attr` on elements named `element` (e.g. every
// x="..." of every <rect>), in document order.
std::vector<std::string> svg_attribute_values(const std::string& svg, const std::string& element,
                                              const std::string& attr);
// Like above but restricted to elements whose class attribute equals `cls`.
std::vector<std::vector<std::pair<std::string, std::string>>> svg_elements(
    const std::string& svg, const std::string& element, const std::string& cls = "");

}  // namespace testutil
