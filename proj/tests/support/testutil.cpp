#include "testutil.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace testutil {

namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

TempDir::TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("voweltrace-test-" + tag + "-" + std::to_string(counter.fetch_add(1)) + "-" +
             std::to_string(static_cast<long>(::getpid())));
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

std::uint64_t Rng::next_u64() {
    // splitmix64
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0;
    while (u1 == 0) u1 = uniform();
    double u2 = uniform();
    double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * kPi * u2);
}

std::vector<double> simulate_ar(const std::vector<double>& a, std::size_t n, Rng& rng,
                                std::size_t burn_in) {
    const std::size_t p = a.size();
    std::vector<double> x(n + burn_in, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double v = rng.gaussian();
        for (std::size_t k = 0; k < p && k < i; ++k) v += a[k] * x[i - k - 1];
        x[i] = v;
    }
    return std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(burn_in), x.end());
}

voweltrace::AudioClip synth_vowel(const std::vector<std::pair<double, double>>& resonators,
                                  double f0_hz, int sample_rate, double seconds,
                                  double amplitude) {
    voweltrace::AudioClip clip;
    clip.sample_rate = sample_rate;
    const auto n = static_cast<std::size_t>(seconds * sample_rate);
    clip.samples.assign(n, 0.0);
    const auto period = static_cast<std::size_t>(sample_rate / f0_hz);
    for (std::size_t i = 0; i < n; i += period) clip.samples[i] = 1.0;

    // Klatt-style source: two glottal shaping poles (-12 dB/oct) and a
    // lip-radiation differentiator (+6 dB/oct) give the pulse train the
    // spectral tilt of a natural voice. Real poles and the zero at DC
    // contribute no resonance, so the ground truth stays the injected
    // resonator frequencies.
    constexpr double kGlottalR = 0.98;
    for (int rep = 0; rep < 2; ++rep) {
        double y1 = 0;
        for (double& s : clip.samples) {
            double y = s + kGlottalR * y1;
            y1 = y;
            s = y;
        }
    }
    double prev = 0;
    for (double& s : clip.samples) {
        double cur = s;
        s = cur - prev;
        prev = cur;
    }

    for (const auto& [freq, bw] : resonators) {
        const double r = std::exp(-kPi * bw / sample_rate);
        const double c1 = 2.0 * r * std::cos(2.0 * kPi * freq / sample_rate);
        const double c2 = -r * r;
        double y1 = 0, y2 = 0;
        for (double& s : clip.samples) {
            double y = s + c1 * y1 + c2 * y2;
            y2 = y1;
            y1 = y;
            s = y;
        }
    }
    double peak = 0;
    for (double s : clip.samples) peak = std::max(peak, std::abs(s));
    if (peak > 0)
        for (double& s : clip.samples) s *= amplitude / peak;
    return clip;
}

void fft(std::vector<std::complex<double>>& data) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of 2");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = -2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = data[i + k];
                std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

namespace {

std::vector<double> hann(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - 1));
    return w;
}

}  // namespace

std::vector<double> magnitude_spectrum(const std::vector<double>& signal, std::size_t n_fft) {
    std::vector<std::complex<double>> buf(n_fft, 0.0);
    const std::vector<double> w = hann(std::min(n_fft, signal.size()));
    for (std::size_t i = 0; i < w.size(); ++i) buf[i] = signal[i] * w[i];
    fft(buf);
    std::vector<double> mag(n_fft / 2 + 1);
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(buf[i]);
    return mag;
}

std::vector<double> welch_psd(const std::vector<double>& signal, std::size_t segment,
                              std::size_t hop) {
    const std::vector<double> w = hann(segment);
    std::vector<double> psd(segment / 2 + 1, 0.0);
    std::size_t count = 0;
    for (std::size_t start = 0; start + segment <= signal.size(); start += hop) {
        std::vector<std::complex<double>> buf(segment);
        for (std::size_t i = 0; i < segment; ++i) buf[i] = signal[start + i] * w[i];
        fft(buf);
        for (std::size_t i = 0; i < psd.size(); ++i) psd[i] += std::norm(buf[i]);
        ++count;
    }
    if (count == 0) throw std::invalid_argument("signal shorter than one Welch segment");
    for (double& v : psd) v /= static_cast<double>(count);
    return psd;
}

double dominant_frequency(const std::vector<double>& signal, int sample_rate, std::size_t n_fft) {
    std::vector<double> mag = magnitude_spectrum(signal, n_fft);
    std::size_t best = 0;
    for (std::size_t i = 1; i < mag.size(); ++i)
        if (mag[i] > mag[best]) best = i;
    return static_cast<double>(best) * sample_rate / static_cast<double>(n_fft);
}

std::string xml_check(const std::string& text) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (c == '>') return "stray '>' at offset " + std::to_string(i);
        if (c != '<') {
            if (c == '&') {
                std::size_t semi = text.find(';', i);
                if (semi == std::string::npos || semi - i > 8)
                    return "unterminated entity at offset " + std::to_string(i);
            }
            ++i;
            continue;
        }
        // inside a tag
        std::size_t start = ++i;
        if (start < n && text[start] == '?') {  // declaration
            std::size_t end = text.find("?>", start);
            if (end == std::string::npos) return "unterminated declaration";
            i = end + 2;
            continue;
        }
        if (text.compare(start, 3, "!--") == 0) {
            std::size_t end = text.find("-->", start);
            if (end == std::string::npos) return "unterminated comment";
            i = end + 3;
            continue;
        }
        bool closing = start < n && text[start] == '/';
        if (closing) ++start;
        std::size_t name_end = start;
        while (name_end < n && (std::isalnum(static_cast<unsigned char>(text[name_end])) ||
                                text[name_end] == '-' || text[name_end] == ':'))
            ++name_end;
        if (name_end == start) return "empty tag name at offset " + std::to_string(start);
        std::string name = text.substr(start, name_end - start);

        // scan attributes, tracking quotes
        std::size_t j = name_end;
        bool self_closing = false;
        while (j < n && text[j] != '>') {
            if (text[j] == '"') {
                std::size_t close = text.find('"', j + 1);
                if (close == std::string::npos) return "unbalanced attribute quote in <" + name + ">";
                j = close + 1;
                continue;
            }
            if (text[j] == '<') return "nested '<' in tag <" + name + ">";
            if (text[j] == '/' && j + 1 < n && text[j + 1] == '>') {
                self_closing = true;
            }
            ++j;
        }
        if (j >= n) return "unterminated tag <" + name + ">";
        i = j + 1;

        if (closing) {
            if (stack.empty()) return "closing </" + name + "> with no open element";
            if (stack.back() != name)
                return "mismatched </" + name + ">, expected </" + stack.back() + ">";
            stack.pop_back();
        } else if (!self_closing) {
            stack.push_back(name);
        }
    }
    if (!stack.empty()) return "unclosed <" + stack.back() + ">";
    return "";
}

std::vector<std::vector<std::pair<std::string, std::string>>> svg_elements(
    const std::string& svg, const std::string& element, const std::string& cls) {
    std::vector<std::vector<std::pair<std::string, std::string>>> out;
    const std::string open = "<" + element;
    std::size_t pos = 0;
    while ((pos = svg.find(open, pos)) != std::string::npos) {
        char after = pos + open.size() < svg.size() ? svg[pos + open.size()] : '\0';
        if (after != ' ' && after != '>' && after != '/') {
            pos += open.size();
            continue;
        }
        std::size_t end = svg.find('>', pos);
        if (end == std::string::npos) break;
        std::string tag = svg.substr(pos, end - pos);
        std::vector<std::pair<std::string, std::string>> attrs;
        std::size_t k = open.size();
        while (k < tag.size()) {
            while (k < tag.size() && (std::isspace(static_cast<unsigned char>(tag[k])) || tag[k] == '/'))
                ++k;
            std::size_t eq = tag.find('=', k);
            if (eq == std::string::npos) break;
            std::string name = tag.substr(k, eq - k);
            std::size_t q1 = tag.find('"', eq);
            if (q1 == std::string::npos) break;
            std::size_t q2 = tag.find('"', q1 + 1);
            if (q2 == std::string::npos) break;
            attrs.emplace_back(name, tag.substr(q1 + 1, q2 - q1 - 1));
            k = q2 + 1;
        }
        bool matches = cls.empty();
        for (const auto& [name, value] : attrs)
            if (name == "class" && value == cls) matches = true;
        if (matches) out.push_back(std::move(attrs));
        pos = end + 1;
    }
    return out;
}

std::vector<std::string> svg_attribute_values(const std::string& svg, const std::string& element,
                                              const std::string& attr) {
    std::vector<std::string> values;
    for (const auto& attrs : svg_elements(svg, element)) {
        for (const auto& [name, value] : attrs)
            if (name == attr) values.push_back(value);
    }
    return values;
}

}  // namespace testutil
