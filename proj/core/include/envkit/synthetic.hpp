#pragma once

#include "envkit/signal.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace envkit {

enum class SyntheticKind { am_tone, multi_carrier_am, chirp_am, noise_burst };

std::string_view to_string(SyntheticKind k) noexcept;
std::optional<SyntheticKind> parse_synthetic_kind(std::string_view name) noexcept;

/// Test signal with a known envelope
///   e(t) = (1 + depth * sin(2 pi modulator t)) / (1 + depth),
/// which peaks at 1.
///
/// - am_tone: e(t) sin(2 pi f t) with f = carriers_hz[0].
/// - multi_carrier_am: e(t) times the mean of one sine per carrier.
/// - chirp_am: e(t) times a linear chirp from carriers_hz[0] to carriers_hz[1].
/// - noise_burst: e(t) times uniform white noise on [-1, 1] drawn from `seed`;
///   carriers are ignored.
struct SyntheticSpec {
    SyntheticKind kind = SyntheticKind::am_tone;
    std::vector<double> carriers_hz{2000.0};
    double modulator_hz = 5.0;
    double depth = 0.5;
    double duration_s = 2.0;
    double sample_rate_hz = 44100.0;
    std::uint64_t seed = 0;
};

struct SyntheticSignal {
    Signal signal;
    Signal envelope;
};

/// Sample count is round(duration_s * sample_rate_hz).
/// Throws ValidationError describing the first offending field.
SyntheticSignal generate(const SyntheticSpec& spec);

} // namespace envkit
