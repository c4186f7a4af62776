#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace voweltrace {

// Mono waveform. Samples are in [-1, 1]; sample_rate is in Hz.
struct AudioClip {
    std::vector<double> samples;
    int sample_rate = 0;
    std::string source_path;

    double duration_s() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

enum class WavEncoding { pcm16, float32 };

// Reads RIFF/WAVE, PCM 16-bit or IEEE float 32-bit, any channel count
// (multi-channel is averaged to mono). Integer samples are normalized
// by full scale (32768).
AudioClip read_wav(const std::filesystem::path& path);

void write_wav(const AudioClip& clip, const std::filesystem::path& path,
               WavEncoding encoding = WavEncoding::pcm16);

// Band-limited rate conversion: Kaiser-windowed sinc interpolation,
// stopband attenuation >= 70 dB above the lower Nyquist. target_rate
// equal to the clip rate returns the clip unchanged.
AudioClip resample(const AudioClip& clip, int target_rate);
AudioClip resample_serial(const AudioClip& clip, int target_rate);

// y[n] = x[n] - a*x[n-1] with a = exp(-2*pi*from_hz/sample_rate).
// First sample follows the y[0] = x[0]*(1 - a) convention, so a constant
// input produces a constant output from sample 0.
AudioClip preemphasize(const AudioClip& clip, double from_hz);

}  // namespace voweltrace
