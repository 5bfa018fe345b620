#pragma once

#include "envkit/signal.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace envkit {

enum class Method { three_step, follower, rms, hilbert };

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

/// Tuning knobs of the three-step envelope. Defaults sit between the low
/// (100 Hz) and high (300 Hz) cutoffs used for typical 44.1 kHz material.
struct EnvelopeParams {
    std::size_t bunch_size = 50;
    double cutoff_hz = 150.0;
    int filter_order = 4;

    friend bool operator==(const EnvelopeParams&, const EnvelopeParams&) = default;
};

struct FollowerParams {
    double cutoff_hz = 150.0;
    int filter_order = 4;

    friend bool operator==(const FollowerParams&, const FollowerParams&) = default;
};

struct RmsParams {
    std::size_t window_samples = 50;

    friend bool operator==(const RmsParams&, const RmsParams&) = default;
};

struct HilbertParams {
    friend bool operator==(const HilbertParams&, const HilbertParams&) = default;
};

/// A method together with its parameters; the alternative selects the method.
using MethodConfig = std::variant<EnvelopeParams, FollowerParams, RmsParams, HilbertParams>;

Method method_of(const MethodConfig& config) noexcept;

/// Compact `key=value;...` description, safe to embed in a CSV field.
std::string describe(const MethodConfig& config);

struct EnvelopeResult {
    Signal envelope;
    Method method;
    MethodConfig config;
};

/// Intermediate signals of the three-step method, for plotting.
struct ThreeStepTrace {
    Signal rectified;
    Signal staircase;
    Signal envelope;
};

/// rectify -> bunch_max -> zero-phase Butterworth low-pass.
EnvelopeResult three_step_envelope(const Signal& s, const EnvelopeParams& p);
ThreeStepTrace three_step_trace(const Signal& s, const EnvelopeParams& p);

/// Rectify, then zero-phase Butterworth low-pass.
EnvelopeResult envelope_follower(const Signal& s, double cutoff_hz, int order = 4);

/// Root mean square over a centered window of `window_samples` that shrinks
/// at the signal edges. For an even width the window holds one more sample
/// before the center than after it.
/// Throws ValidationError("invalid window") for a zero width.
EnvelopeResult envelope_rms(const Signal& s, std::size_t window_samples);

/// Magnitude of the FFT-based analytic signal. No windowing is applied, so
/// expect errors near both edges.
EnvelopeResult envelope_hilbert(const Signal& s);

/// Dispatches on the alternative held by `config`.
EnvelopeResult run_method(const Signal& s, const MethodConfig& config);

/// Named parameter sets for common 44.1 kHz material.
struct Preset {
    std::string_view name;
    std::size_t bunch_size;
    double cutoff_hz;
};

inline constexpr std::array<Preset, 4> kPresets{{
    {"canary", 35, 300.0},
    {"whale", 50, 300.0},
    {"speech", 50, 100.0},
    {"piano", 200, 100.0},
}};

/// Looks up a preset by name; "none" and unknown names yield nullopt.
std::optional<EnvelopeParams> find_preset(std::string_view name) noexcept;

/// Bunch of 35 samples with a 120 Hz cutoff; the three-step side of the
/// default method comparison.
inline constexpr EnvelopeParams kComparisonThreeStep{35, 120.0, 4};
inline constexpr FollowerParams kComparisonFollower{150.0, 4};
inline constexpr RmsParams kComparisonRms{50};

} // namespace envkit
