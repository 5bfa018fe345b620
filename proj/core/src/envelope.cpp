#include "envkit/envelope.hpp"

#include "envkit/butterworth.hpp"
#include "envkit/error.hpp"
#include "envkit/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace envkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

FilterDesign lowpass_for(const Signal& s, double cutoff_hz, int order) {
    return butterworth_lowpass({order, cutoff_hz, s.sample_rate()});
}

} // namespace

std::string_view to_string(Method m) noexcept {
    switch (m) {
    case Method::three_step: return "three_step";
    case Method::follower: return "follower";
    case Method::rms: return "rms";
    case Method::hilbert: return "hilbert";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
    for (Method m : {Method::three_step, Method::follower, Method::rms, Method::hilbert}) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

Method method_of(const MethodConfig& config) noexcept {
    return std::visit(overloaded{
                          [](const EnvelopeParams&) { return Method::three_step; },
                          [](const FollowerParams&) { return Method::follower; },
                          [](const RmsParams&) { return Method::rms; },
                          [](const HilbertParams&) { return Method::hilbert; },
                      },
                      config);
}

std::string describe(const MethodConfig& config) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const EnvelopeParams& p) {
                       os << "N=" << p.bunch_size << ";fc=" << p.cutoff_hz << ";order=" << p.filter_order;
                   },
                   [&](const FollowerParams& p) { os << "fc=" << p.cutoff_hz << ";order=" << p.filter_order; },
                   [&](const RmsParams& p) { os << "window=" << p.window_samples; },
                   [&](const HilbertParams&) { os << "fft"; },
               },
               config);
    return os.str();
}

ThreeStepTrace three_step_trace(const Signal& s, const EnvelopeParams& p) {
    if (s.empty()) throw ValidationError("empty input");
    const FilterDesign design = lowpass_for(s, p.cutoff_hz, p.filter_order);
    const BunchSpec spec(p.bunch_size);
    Signal rectified = rectify(s);
    Signal staircase = bunch_max(rectified, spec);
    Signal envelope = filtfilt_zero_phase(design, staircase);
    return {std::move(rectified), std::move(staircase), std::move(envelope)};
}

EnvelopeResult three_step_envelope(const Signal& s, const EnvelopeParams& p) {
    return {three_step_trace(s, p).envelope, Method::three_step, p};
}

EnvelopeResult envelope_follower(const Signal& s, double cutoff_hz, int order) {
    if (s.empty()) throw ValidationError("empty input");
    const FilterDesign design = lowpass_for(s, cutoff_hz, order);
    return {filtfilt_zero_phase(design, rectify(s)), Method::follower, FollowerParams{cutoff_hz, order}};
}

EnvelopeResult envelope_rms(const Signal& s, std::size_t window_samples) {
    if (window_samples < 1) throw ValidationError("invalid window");

    const auto x = s.samples();
    const std::size_t n = x.size();
    // Prefix sums of squares in extended precision keep long signals from
    // losing the small-window differences.
    std::vector<long double> prefix(n + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + static_cast<long double>(x[i]) * x[i];

    const std::size_t before = window_samples / 2;
    const std::size_t after = window_samples - 1 - before;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= before ? i - before : 0;
        const std::size_t hi = std::min(n - 1, i + after);
        const long double sum = prefix[hi + 1] - prefix[lo];
        const double mean = static_cast<double>(sum / static_cast<long double>(hi - lo + 1));
        out[i] = std::sqrt(std::max(mean, 0.0));
    }
    return {Signal(std::move(out), s.sample_rate()), Method::rms, RmsParams{window_samples}};
}

EnvelopeResult run_method(const Signal& s, const MethodConfig& config) {
    return std::visit(overloaded{
                          [&](const EnvelopeParams& p) { return three_step_envelope(s, p); },
                          [&](const FollowerParams& p) { return envelope_follower(s, p.cutoff_hz, p.filter_order); },
                          [&](const RmsParams& p) { return envelope_rms(s, p.window_samples); },
                          [&](const HilbertParams&) { return envelope_hilbert(s); },
                      },
                      config);
}

std::optional<EnvelopeParams> find_preset(std::string_view name) noexcept {
    const auto it = std::find_if(kPresets.begin(), kPresets.end(), [&](const Preset& p) { return p.name == name; });
    if (it == kPresets.end()) return std::nullopt;
    return EnvelopeParams{it->bunch_size, it->cutoff_hz, 4};
}

} // namespace envkit
