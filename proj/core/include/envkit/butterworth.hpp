#pragma once

#include <complex>
#include <span>
#include <vector>

namespace envkit {

/// Low-pass design request. Orders 1 through kMaxFilterOrder are accepted.
struct FilterSpec {
    int order = 4;
    double cutoff_hz = 0.0;
    double sample_rate_hz = 0.0;
};

inline constexpr int kMaxFilterOrder = 32;

/// One biquad, a0 normalized to 1:
///   H(z) = (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2)
/// A first-order section has b2 == a2 == 0.
struct Biquad {
    double b0 = 1.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;

    std::complex<double> response(std::complex<double> z) const noexcept;

    /// Roots of z^2 + a1 z + a2 (one root for a first-order section).
    std::vector<std::complex<double>> poles() const;

    bool first_order() const noexcept { return b2 == 0.0 && a2 == 0.0; }
};

/// Cascade of second-order sections realizing a digital low-pass filter.
/// The overall gain lives in the first section's numerator.
struct FilterDesign {
    std::vector<Biquad> sections;
    int order = 0;
    double cutoff_hz = 0.0;
    double sample_rate_hz = 0.0;

    std::vector<std::complex<double>> poles() const;
};

/// Butterworth low-pass via the analog prototype and a bilinear transform
/// prewarped at the cutoff, so |H(f_c)| is exactly 1/sqrt(2) and the DC gain
/// is exactly 1 (both up to rounding).
///
/// Sections are ordered by ascending distance of their poles from the unit
/// circle; each carries two zeros at z = -1 (one for the real-pole section of
/// an odd order).
///
/// Throws ValidationError("cutoff above Nyquist") when cutoff >= fs/2 and
/// ValidationError("invalid filter spec") for a non-positive cutoff, sample
/// rate, or an order outside [1, kMaxFilterOrder].
FilterDesign butterworth_lowpass(const FilterSpec& spec);

/// H(e^{j 2 pi f / fs}) at each requested frequency, evaluated as the product
/// of the section responses. Frequencies outside [0, fs/2] are rejected with
/// ValidationError("frequency out of band").
std::vector<std::complex<double>> frequency_response(const FilterDesign& design,
                                                     std::span<const double> freqs_hz,
                                                     double sample_rate_hz);

} // namespace envkit
