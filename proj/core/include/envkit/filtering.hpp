#pragma once

#include "envkit/butterworth.hpp"
#include "envkit/signal.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace envkit {

/// Delay line of a section cascade in transposed direct form II: two values
/// per section, laid out section by section.
struct FilterState {
    std::vector<double> delays;

    /// All-zero state sized for `design`.
    static FilterState fresh(const FilterDesign& design) { return {std::vector<double>(2 * design.sections.size(), 0.0)}; }

    friend bool operator==(const FilterState&, const FilterState&) = default;
};

/// Single forward pass of the cascade. The returned state continues the
/// recurrence, so filtering x then y with the carried state reproduces the
/// result of filtering x followed by y in one call.
/// Throws ValidationError("state dimension mismatch").
std::pair<Signal, FilterState> filter_causal(const FilterDesign& design, const Signal& s, FilterState state);

/// Per-side padding used by filtfilt_zero_phase: 3 * (2 * order + 1).
std::size_t default_pad_length(const FilterDesign& design) noexcept;

/// Zero-phase forward-backward filtering.
///
/// Both ends are extended by odd-symmetric reflection (2 x[0] - x[k]) of
/// `pad_length` samples (default_pad_length when unset). Each pass starts
/// from the steady-state delay line for its first input value, and the
/// forward pass runs on through a constant tail until its transient has
/// decayed below double precision. The result is therefore the |H|^2
/// zero-phase filter applied to the extended signal, which makes the
/// operation commute with time reversal and preserve constants exactly.
///
/// Requires s.size() > pad_length, otherwise throws
/// ValidationError("signal shorter than filter transient pad").
Signal filtfilt_zero_phase(const FilterDesign& design, const Signal& s,
                           std::optional<std::size_t> pad_length = std::nullopt);

/// Delay line that a constant input `level` settles to.
FilterState steady_state(const FilterDesign& design, double level);

/// rectify -> bunch_max -> filter_causal over the whole signal with a fresh
/// state. Streaming counterpart of the three-step envelope; it carries the
/// filter's group delay and is not zero-phase.
Signal causal_three_step(const FilterDesign& design, const BunchSpec& spec, const Signal& s);

/// Incremental causal envelope. Each pushed chunk must hold a positive
/// multiple of the bunch size and share the design's sample rate; the
/// concatenated output equals causal_three_step on the concatenated input.
class EnvelopeStream {
public:
    EnvelopeStream(FilterDesign design, BunchSpec spec);

    /// Throws ValidationError("chunk not bunch-aligned") or
    /// ValidationError("inconsistent sample rate").
    Signal push(const Signal& chunk);

    const FilterState& state() const noexcept { return state_; }

private:
    FilterDesign design_;
    BunchSpec spec_;
    FilterState state_;
    std::optional<double> sample_rate_;
};

/// Runs an EnvelopeStream over `chunks`, one output chunk per input chunk.
std::vector<Signal> chunked_envelope_stream(const FilterDesign& design, const BunchSpec& spec,
                                            std::span<const Signal> chunks);

} // namespace envkit
