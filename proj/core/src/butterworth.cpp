#include "envkit/butterworth.hpp"

#include "envkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace envkit {

namespace {

using cd = std::complex<double>;

void validate(const FilterSpec& spec) {
    if (spec.order < 1 || spec.order > kMaxFilterOrder || !(spec.cutoff_hz > 0.0) || !(spec.sample_rate_hz > 0.0) ||
        !std::isfinite(spec.cutoff_hz) || !std::isfinite(spec.sample_rate_hz)) {
        throw ValidationError("invalid filter spec");
    }
    if (spec.cutoff_hz >= spec.sample_rate_hz / 2.0) throw ValidationError("cutoff above Nyquist");
}

struct PendingSection {
    Biquad biquad;
    double distance; // 1 - |pole|
};

} // namespace

cd Biquad::response(cd z) const noexcept {
    const cd zi = 1.0 / z;
    const cd zi2 = zi * zi;
    return (b0 + b1 * zi + b2 * zi2) / (1.0 + a1 * zi + a2 * zi2);
}

std::vector<cd> Biquad::poles() const {
    if (a2 == 0.0) return {cd(-a1, 0.0)};
    const cd disc = std::sqrt(cd(a1 * a1 - 4.0 * a2, 0.0));
    return {(-a1 + disc) / 2.0, (-a1 - disc) / 2.0};
}

std::vector<cd> FilterDesign::poles() const {
    std::vector<cd> out;
    for (const auto& s : sections) {
        auto p = s.poles();
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

FilterDesign butterworth_lowpass(const FilterSpec& spec) {
    validate(spec);

    const int n = spec.order;
    // Analog cutoff after prewarping, already divided by 2 fs so the bilinear
    // map reads z = (1 + s) / (1 - s).
    const double warped = std::tan(std::numbers::pi * spec.cutoff_hz / spec.sample_rate_hz);

    std::vector<PendingSection> pending;
    // Left-half-plane prototype poles exp(j pi (2k + n + 1) / (2n)); the upper
    // half of each conjugate pair is enough.
    for (int k = 0; k < n / 2; ++k) {
        const double theta = std::numbers::pi * (2.0 * k + n + 1.0) / (2.0 * n);
        const cd s = warped * std::polar(1.0, theta);
        const cd z = (1.0 + s) / (1.0 - s);
        Biquad b{1.0, 2.0, 1.0, -2.0 * z.real(), std::norm(z)};
        pending.push_back({b, 1.0 - std::abs(z)});
    }
    if (n % 2 == 1) {
        const double z = (1.0 - warped) / (1.0 + warped);
        Biquad b{1.0, 1.0, 0.0, -z, 0.0};
        pending.push_back({b, 1.0 - std::abs(z)});
    }

    std::stable_sort(pending.begin(), pending.end(),
                     [](const PendingSection& l, const PendingSection& r) { return l.distance < r.distance; });

    FilterDesign design;
    design.order = n;
    design.cutoff_hz = spec.cutoff_hz;
    design.sample_rate_hz = spec.sample_rate_hz;

    // Gain from the stored coefficients so the evaluated DC response is 1 up
    // to rounding.
    double gain = 1.0;
    for (const auto& p : pending) {
        const Biquad& b = p.biquad;
        gain *= (1.0 + b.a1 + b.a2) / (b.b0 + b.b1 + b.b2);
        design.sections.push_back(b);
    }
    Biquad& first = design.sections.front();
    first.b0 *= gain;
    first.b1 *= gain;
    first.b2 *= gain;
    return design;
}

std::vector<cd> frequency_response(const FilterDesign& design, std::span<const double> freqs_hz,
                                   double sample_rate_hz) {
    if (!(sample_rate_hz > 0.0)) throw ValidationError("invalid sample rate: must be positive and finite");
    const double nyquist = sample_rate_hz / 2.0;

    std::vector<cd> out;
    out.reserve(freqs_hz.size());
    for (double f : freqs_hz) {
        if (!(f >= 0.0 && f <= nyquist)) throw ValidationError("frequency out of band");
        const cd z = std::polar(1.0, 2.0 * std::numbers::pi * f / sample_rate_hz);
        cd h(1.0, 0.0);
        for (const auto& s : design.sections) h *= s.response(z);
        out.push_back(h);
    }
    return out;
}

} // namespace envkit
