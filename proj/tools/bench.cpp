// Compares the serial reference kernels against the OpenMP versions on
// synthetic vowel audio and reports timings per kernel.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "voweltrace/audio.hpp"
#include "voweltrace/formant.hpp"

namespace {

using voweltrace::AudioClip;

AudioClip synthetic_vowel(double seconds, int sample_rate) {
    constexpr double pi = std::numbers::pi;
    const auto n = static_cast<std::size_t>(seconds * sample_rate);
    std::vector<double> excitation(n, 0.0);
    const int period = sample_rate / 100;  // 100 Hz glottal pulse train
    for (std::size_t i = 0; i < n; i += static_cast<std::size_t>(period)) excitation[i] = 1.0;

    AudioClip clip;
    clip.sample_rate = sample_rate;
    clip.samples = std::move(excitation);
    for (auto [freq, bw] : {std::pair{500.0, 80.0}, std::pair{1500.0, 90.0}}) {
        const double r = std::exp(-pi * bw / sample_rate);
        const double c = 2.0 * r * std::cos(2.0 * pi * freq / sample_rate);
        double y1 = 0, y2 = 0;
        for (double& s : clip.samples) {
            double y = s + c * y1 - r * r * y2;
            y2 = y1;
            y1 = y;
            s = y;
        }
    }
    double peak = 0;
    for (double s : clip.samples) peak = std::max(peak, std::abs(s));
    for (double& s : clip.samples) s *= 0.5 / peak;
    return clip;
}

template <typename F>
double best_of(int repeats, F&& fn) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        auto start = std::chrono::steady_clock::now();
        fn();
        auto stop = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(stop - start).count());
    }
    return best;
}

void report(const char* name, double serial_s, double parallel_s) {
    std::printf("%-24s serial %8.3f s   parallel %8.3f s   speedup %5.2fx\n", name, serial_s,
                parallel_s, serial_s / parallel_s);
}

}  // namespace

int main(int argc, char** argv) {
    double seconds = 20.0;
    int repeats = 3;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--seconds" && i + 1 < argc)
            seconds = std::stod(argv[++i]);
        else if (arg == "--repeat" && i + 1 < argc)
            repeats = std::stoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: %s [--seconds N] [--repeat N]\n", argv[0]);
            return 1;
        }
    }

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel kernels run serially\n");
#endif
    std::printf("input: %.1f s of synthetic vowel audio at 44100 Hz\n\n", seconds);

    const AudioClip clip = synthetic_vowel(seconds, 44100);

    double serial_resample =
        best_of(repeats, [&] { (void)voweltrace::resample_serial(clip, 11000); });
    double parallel_resample = best_of(repeats, [&] { (void)voweltrace::resample(clip, 11000); });
    report("resample 44100->11000", serial_resample, parallel_resample);

    voweltrace::FormantConfig config;
    double serial_track =
        best_of(repeats, [&] { (void)voweltrace::track_formants_serial(clip, config); });
    double parallel_track =
        best_of(repeats, [&] { (void)voweltrace::track_formants(clip, config); });
    report("track_formants", serial_track, parallel_track);

    return 0;
}
