#include "envkit/filtering.hpp"

#include "envkit/error.hpp"

#include <algorithm>
#include <cmath>

namespace envkit {

namespace {

// Transposed direct form II, in place.
void run_cascade(const std::vector<Biquad>& sections, std::span<double> data, std::span<double> delays) {
    for (std::size_t k = 0; k < sections.size(); ++k) {
        const Biquad& q = sections[k];
        double z1 = delays[2 * k];
        double z2 = delays[2 * k + 1];
        for (double& v : data) {
            const double x = v;
            const double y = q.b0 * x + z1;
            z1 = q.b1 * x - q.a1 * y + z2;
            z2 = q.b2 * x - q.a2 * y;
            v = y;
        }
        delays[2 * k] = z1;
        delays[2 * k + 1] = z2;
    }
}

// Samples needed for the slowest pole's transient to fall below ~1e-18,
// doubled to cover the polynomial growth of clustered poles in a cascade.
std::size_t settle_length(const FilterDesign& design) {
    double radius = 0.0;
    for (const auto& p : design.poles()) radius = std::max(radius, std::abs(p));
    const std::size_t floor_len = 8 * static_cast<std::size_t>(design.order);
    if (radius < 1e-300) return floor_len;
    constexpr double kLogTarget = 41.5; // -ln(1e-18)
    constexpr double kCap = 1 << 24;
    const double len = 2.0 * kLogTarget / -std::log(radius);
    return floor_len + static_cast<std::size_t>(std::min(std::ceil(len), kCap));
}

} // namespace

std::pair<Signal, FilterState> filter_causal(const FilterDesign& design, const Signal& s, FilterState state) {
    if (state.delays.size() != 2 * design.sections.size()) throw ValidationError("state dimension mismatch");
    std::vector<double> out(s.values());
    run_cascade(design.sections, out, state.delays);
    return {Signal(std::move(out), s.sample_rate()), std::move(state)};
}

std::size_t default_pad_length(const FilterDesign& design) noexcept {
    return 3 * (2 * static_cast<std::size_t>(design.order) + 1);
}

FilterState steady_state(const FilterDesign& design, double level) {
    FilterState state = FilterState::fresh(design);
    double u = level;
    for (std::size_t k = 0; k < design.sections.size(); ++k) {
        const Biquad& q = design.sections[k];
        const double y = u * (q.b0 + q.b1 + q.b2) / (1.0 + q.a1 + q.a2);
        state.delays[2 * k] = y - q.b0 * u;
        state.delays[2 * k + 1] = q.b2 * u - q.a2 * y;
        u = y;
    }
    return state;
}

Signal filtfilt_zero_phase(const FilterDesign& design, const Signal& s, std::optional<std::size_t> pad_length) {
    const std::size_t pad = pad_length.value_or(default_pad_length(design));
    const std::size_t n = s.size();
    if (n <= pad) throw ValidationError("signal shorter than filter transient pad");

    const auto x = s.samples();
    const std::size_t tail = settle_length(design);

    std::vector<double> buf;
    buf.reserve(n + 2 * pad + tail);
    for (std::size_t i = 0; i < pad; ++i) buf.push_back(2.0 * x[0] - x[pad - i]);
    buf.insert(buf.end(), x.begin(), x.end());
    for (std::size_t i = 0; i < pad; ++i) buf.push_back(2.0 * x[n - 1] - x[n - 2 - i]);
    buf.resize(buf.size() + tail, buf.back());

    FilterState state = steady_state(design, buf.front());
    run_cascade(design.sections, buf, state.delays);

    std::reverse(buf.begin(), buf.end());
    state = steady_state(design, buf.front());
    run_cascade(design.sections, buf, state.delays);
    std::reverse(buf.begin(), buf.end());

    return Signal(std::vector<double>(buf.begin() + static_cast<std::ptrdiff_t>(pad),
                                      buf.begin() + static_cast<std::ptrdiff_t>(pad + n)),
                  s.sample_rate());
}

Signal causal_three_step(const FilterDesign& design, const BunchSpec& spec, const Signal& s) {
    return filter_causal(design, bunch_max(rectify(s), spec), FilterState::fresh(design)).first;
}

EnvelopeStream::EnvelopeStream(FilterDesign design, BunchSpec spec)
    : design_(std::move(design)), spec_(spec), state_(FilterState::fresh(design_)) {}

Signal EnvelopeStream::push(const Signal& chunk) {
    if (chunk.empty() || chunk.size() % spec_.size() != 0) throw ValidationError("chunk not bunch-aligned");
    const double rate = sample_rate_.value_or(chunk.sample_rate());
    if (chunk.sample_rate() != rate || (design_.sample_rate_hz > 0.0 && chunk.sample_rate() != design_.sample_rate_hz)) {
        throw ValidationError("inconsistent sample rate");
    }
    sample_rate_ = rate;

    auto [out, next] = filter_causal(design_, bunch_max(rectify(chunk), spec_), std::move(state_));
    state_ = std::move(next);
    return out;
}

std::vector<Signal> chunked_envelope_stream(const FilterDesign& design, const BunchSpec& spec,
                                            std::span<const Signal> chunks) {
    EnvelopeStream stream(design, spec);
    std::vector<Signal> out;
    out.reserve(chunks.size());
    for (const auto& c : chunks) out.push_back(stream.push(c));
    return out;
}

} // namespace envkit
