#include "envkit/synthetic.hpp"

#include "envkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace envkit {

std::string_view to_string(SyntheticKind k) noexcept {
    switch (k) {
    case SyntheticKind::am_tone: return "am_tone";
    case SyntheticKind::multi_carrier_am: return "multi_carrier_am";
    case SyntheticKind::chirp_am: return "chirp_am";
    case SyntheticKind::noise_burst: return "noise_burst";
    }
    return "unknown";
}

std::optional<SyntheticKind> parse_synthetic_kind(std::string_view name) noexcept {
    for (auto k : {SyntheticKind::am_tone, SyntheticKind::multi_carrier_am, SyntheticKind::chirp_am,
                   SyntheticKind::noise_burst}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

namespace {

void validate(const SyntheticSpec& spec) {
    if (!(spec.sample_rate_hz > 0.0) || !std::isfinite(spec.sample_rate_hz)) {
        throw ValidationError("invalid sample rate: must be positive and finite");
    }
    if (!(spec.duration_s > 0.0) || !std::isfinite(spec.duration_s)) {
        throw ValidationError("invalid duration: must be positive");
    }
    if (std::llround(spec.duration_s * spec.sample_rate_hz) < 1) {
        throw ValidationError("invalid duration: shorter than one sample");
    }
    if (!(spec.depth >= 0.0 && spec.depth <= 1.0)) throw ValidationError("invalid depth: must lie in [0, 1]");
    if (!(spec.modulator_hz >= 0.0) || !std::isfinite(spec.modulator_hz)) {
        throw ValidationError("invalid modulator: must be non-negative");
    }

    if (spec.kind == SyntheticKind::noise_burst) return;

    if (spec.carriers_hz.empty()) throw ValidationError("invalid carrier: none given");
    if (spec.kind == SyntheticKind::chirp_am && spec.carriers_hz.size() != 2) {
        throw ValidationError("invalid carrier: chirp_am needs a start and an end frequency");
    }
    if (spec.kind == SyntheticKind::am_tone && spec.carriers_hz.size() != 1) {
        throw ValidationError("invalid carrier: am_tone takes exactly one carrier");
    }
    const double nyquist = spec.sample_rate_hz / 2.0;
    for (double c : spec.carriers_hz) {
        if (!(c > 0.0)) throw ValidationError("invalid carrier: must be positive");
        if (c >= nyquist) throw ValidationError("invalid carrier: at or above Nyquist");
        if (spec.modulator_hz >= c) throw ValidationError("invalid modulator: must be below every carrier");
    }
}

} // namespace

SyntheticSignal generate(const SyntheticSpec& spec) {
    validate(spec);

    const auto n = static_cast<std::size_t>(std::llround(spec.duration_s * spec.sample_rate_hz));
    const double fs = spec.sample_rate_hz;
    constexpr double two_pi = 2.0 * std::numbers::pi;

    std::vector<double> envelope(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fs;
        envelope[i] = (1.0 + spec.depth * std::sin(two_pi * spec.modulator_hz * t)) / (1.0 + spec.depth);
    }

    std::vector<double> carrier(n);
    switch (spec.kind) {
    case SyntheticKind::am_tone:
        for (std::size_t i = 0; i < n; ++i) carrier[i] = std::sin(two_pi * spec.carriers_hz[0] * (static_cast<double>(i) / fs));
        break;
    case SyntheticKind::multi_carrier_am: {
        const double weight = 1.0 / static_cast<double>(spec.carriers_hz.size());
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / fs;
            double v = 0.0;
            for (double f : spec.carriers_hz) v += std::sin(two_pi * f * t);
            carrier[i] = weight * v;
        }
        break;
    }
    case SyntheticKind::chirp_am: {
        const double f0 = spec.carriers_hz[0];
        const double rate = (spec.carriers_hz[1] - f0) / spec.duration_s;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / fs;
            carrier[i] = std::sin(two_pi * (f0 * t + 0.5 * rate * t * t));
        }
        break;
    }
    case SyntheticKind::noise_burst: {
        std::mt19937_64 rng(spec.seed);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (double& v : carrier) v = dist(rng);
        break;
    }
    }

    std::vector<double> samples(n);
    for (std::size_t i = 0; i < n; ++i) samples[i] = envelope[i] * carrier[i];
    return {Signal(std::move(samples), fs), Signal(std::move(envelope), fs)};
}

} // namespace envkit
