#include "envkit/signal.hpp"

#include "envkit/error.hpp"

#include <algorithm>
#include <cmath>

namespace envkit {

Signal::Signal(std::vector<double> samples, double sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_(sample_rate_hz) {
    if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
        throw ValidationError("invalid sample rate: must be positive and finite");
    }
    if (!std::all_of(samples_.begin(), samples_.end(), [](double v) { return std::isfinite(v); })) {
        throw ValidationError("non-finite sample");
    }
}

Signal Signal::scaled(double gain) const {
    std::vector<double> out(samples_);
    for (double& v : out) v *= gain;
    return Signal(std::move(out), sample_rate_);
}

Signal Signal::reversed() const {
    return Signal(std::vector<double>(samples_.rbegin(), samples_.rend()), sample_rate_);
}

BunchSpec::BunchSpec(std::size_t bunch_size) : size_(bunch_size) {
    if (bunch_size == 0) throw ValidationError("invalid bunch size");
}

Signal rectify(const Signal& s) {
    std::vector<double> out(s.size());
    std::transform(s.samples().begin(), s.samples().end(), out.begin(), [](double v) { return std::abs(v); });
    return Signal(std::move(out), s.sample_rate());
}

Signal bunch_max(const Signal& s, const BunchSpec& spec) {
    if (s.empty()) throw ValidationError("empty input");

    const auto in = s.samples();
    std::vector<double> out(in.size());
    const std::size_t n = spec.size();
    for (std::size_t start = 0; start < in.size(); start += n) {
        const std::size_t stop = std::min(start + n, in.size());
        const double peak = *std::max_element(in.begin() + start, in.begin() + stop);
        std::fill(out.begin() + start, out.begin() + stop, peak);
    }
    return Signal(std::move(out), s.sample_rate());
}

std::vector<std::size_t> bunch_peak_indices(const Signal& s, const BunchSpec& spec) {
    if (s.empty()) throw ValidationError("empty input");

    const auto in = s.samples();
    std::vector<std::size_t> peaks;
    peaks.reserve(spec.bunch_count(in.size()));
    for (std::size_t start = 0; start < in.size(); start += spec.size()) {
        const std::size_t stop = std::min(start + spec.size(), in.size());
        // max_element returns the first of equal maxima.
        const auto it = std::max_element(in.begin() + start, in.begin() + stop);
        peaks.push_back(static_cast<std::size_t>(it - in.begin()));
    }
    return peaks;
}

} // namespace envkit
