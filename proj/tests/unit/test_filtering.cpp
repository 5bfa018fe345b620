#include "catch.hpp"
#include "oracles.hpp"

#include <envkit/error.hpp>
#include <envkit/filtering.hpp>

using envkit::BunchSpec;
using envkit::FilterState;
using envkit::Signal;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kFs = 44100.0;

envkit::FilterDesign design(double fc, int order = 4, double fs = kFs) {
    return envkit::butterworth_lowpass({order, fc, fs});
}

std::vector<double> concat(const std::vector<Signal>& parts) {
    std::vector<double> out;
    for (const auto& p : parts) out.insert(out.end(), p.values().begin(), p.values().end());
    return out;
}

} // namespace

TEST_CASE("filter_causal basics", "[filtering][causal]") {
    const auto d = design(300.0);

    SECTION("zero in, zero out") {
        const auto [y, state] = envkit::filter_causal(d, Signal(std::vector<double>(500, 0.0), kFs), FilterState::fresh(d));
        CHECK(oracle::max_abs(y.values()) == 0.0);
        CHECK(state == FilterState::fresh(d));
    }
    SECTION("constant input settles to itself") {
        // 10 / fc seconds and then some
        const std::size_t n = static_cast<std::size_t>(20.0 / 300.0 * kFs);
        const auto [y, state] = envkit::filter_causal(d, Signal(std::vector<double>(n, 0.7), kFs), FilterState::fresh(d));
        CHECK_THAT(y.values().back(), WithinAbs(0.7, 1e-6));
    }
    SECTION("state dimension is checked") {
        CHECK_THROWS_WITH(envkit::filter_causal(d, Signal({1.0}, kFs), FilterState{{0.0, 0.0}}),
                          ContainsSubstring("state dimension mismatch"));
    }
    SECTION("fresh state shape") {
        CHECK(FilterState::fresh(d).delays.size() == 2 * d.sections.size());
    }
}

TEST_CASE("filter_causal agrees with the expanded difference equation", "[filtering][causal]") {
    for (int order : {1, 2, 3, 4}) {
        const auto d = design(2000.0, order);
        const auto x = oracle::gaussian(3000, static_cast<std::uint64_t>(order));
        const auto [y, _] = envkit::filter_causal(d, Signal(x, kFs), FilterState::fresh(d));
        CHECK(oracle::rel_diff(y.values(), oracle::direct_filter(d, x)) < 1e-9);
    }
}

TEST_CASE("split and whole causal filtering agree", "[filtering][causal]") {
    const auto d = design(150.0);
    const auto x = oracle::gaussian(10000, 11);
    const auto [whole, whole_state] = envkit::filter_causal(d, Signal(x, kFs), FilterState::fresh(d));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t cut = std::uniform_int_distribution<std::size_t>(0, x.size())(rng);
        const Signal a(std::vector<double>(x.begin(), x.begin() + static_cast<long>(cut)), kFs);
        const Signal b(std::vector<double>(x.begin() + static_cast<long>(cut), x.end()), kFs);
        auto [ya, sa] = envkit::filter_causal(d, a, FilterState::fresh(d));
        auto [yb, sb] = envkit::filter_causal(d, b, std::move(sa));
        REQUIRE(oracle::rel_diff(concat({ya, yb}), whole.values()) <= 1e-12);
        REQUIRE(sb == whole_state);
    }
}

TEST_CASE("filter_causal is linear", "[filtering][property]") {
    const auto d = design(500.0);
    const auto x = oracle::gaussian(5000, 1);
    const auto y = oracle::gaussian(5000, 2);
    const double a = 0.3, b = -2.5;
    std::vector<double> mix(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) mix[i] = a * x[i] + b * y[i];

    const auto fx = envkit::filter_causal(d, Signal(x, kFs), FilterState::fresh(d)).first.values();
    const auto fy = envkit::filter_causal(d, Signal(y, kFs), FilterState::fresh(d)).first.values();
    const auto fm = envkit::filter_causal(d, Signal(mix, kFs), FilterState::fresh(d)).first.values();
    std::vector<double> expected(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) expected[i] = a * fx[i] + b * fy[i];
    CHECK(oracle::rel_diff(fm, expected) < 1e-10);
}

TEST_CASE("steady state holds a constant exactly", "[filtering]") {
    const auto d = design(120.0);
    const auto [y, state] = envkit::filter_causal(d, Signal(std::vector<double>(100, 0.3), kFs), envkit::steady_state(d, 0.3));
    CHECK(oracle::max_abs_diff(y.values(), std::vector<double>(100, 0.3)) < 1e-12);
}

TEST_CASE("filtfilt_zero_phase", "[filtering][filtfilt]") {
    SECTION("constants pass unchanged") {
        for (double fc : {100.0, 120.0, 300.0, 5000.0}) {
            const Signal c(std::vector<double>(4410, 0.8), kFs);
            CHECK(oracle::max_abs_diff(envkit::filtfilt_zero_phase(design(fc), c).values(), c.values()) < 1e-9);
        }
    }
    SECTION("sinusoid at the cutoff comes out at half amplitude with no lag") {
        const double fc = 300.0;
        const auto x = oracle::sine(44100, fc, kFs);
        const auto y = envkit::filtfilt_zero_phase(design(fc), Signal(x, kFs)).values();
        CHECK_THAT(oracle::sine_amplitude(y, fc, kFs), WithinRel(0.5, 0.01));
        CHECK(oracle::best_lag(x, y, 40) == 0);
    }
    SECTION("length and rate are preserved") {
        const auto y = envkit::filtfilt_zero_phase(design(300.0), Signal(oracle::gaussian(999, 3), kFs));
        CHECK(y.size() == 999);
        CHECK(y.sample_rate() == kFs);
    }
    SECTION("signals not longer than the pad are rejected") {
        const auto d = design(300.0);
        REQUIRE(envkit::default_pad_length(d) == 27);
        CHECK_THROWS_WITH(envkit::filtfilt_zero_phase(d, Signal(std::vector<double>(27, 1.0), kFs)),
                          ContainsSubstring("signal shorter than filter transient pad"));
        CHECK_NOTHROW(envkit::filtfilt_zero_phase(d, Signal(std::vector<double>(28, 1.0), kFs)));
        CHECK_NOTHROW(envkit::filtfilt_zero_phase(d, Signal(std::vector<double>(5, 1.0), kFs), 3));
    }
}

TEST_CASE("filtfilt commutes with time reversal", "[filtering][filtfilt][property]") {
    for (double fc : {100.0, 120.0, 300.0, 5000.0, 15000.0}) {
        for (int order : {1, 4, 8}) {
            const auto d = design(fc, order);
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const Signal x(oracle::gaussian(5000, seed), kFs);
                const auto forward = envkit::filtfilt_zero_phase(d, x);
                const auto backward = envkit::filtfilt_zero_phase(d, x.reversed()).reversed();
                INFO("fc=" << fc << " order=" << order);
                REQUIRE(oracle::max_abs_diff(forward.values(), backward.values()) < 1e-9);
            }
        }
    }
}

TEST_CASE("filtfilt has zero phase across the passband", "[filtering][filtfilt][property]") {
    const double fc = 300.0;
    const auto d = design(fc);
    for (double ratio : {0.1, 0.5, 1.0}) {
        const double f = ratio * fc;
        const auto x = oracle::sine(2 * 44100, f, kFs, 1.0, 0.3);
        const auto y = envkit::filtfilt_zero_phase(d, Signal(x, kFs)).values();
        INFO("f=" << f);
        CHECK(oracle::best_lag(x, y, 60) == 0);
    }
}

TEST_CASE("filtfilt applies the squared magnitude", "[filtering][filtfilt][property]") {
    const double fc = 300.0;
    const auto d = design(fc);
    for (double f : {150.0, 200.0, 250.0}) {
        const double freqs[] = {f};
        const double h = std::abs(envkit::frequency_response(d, freqs, kFs).front());
        const auto y = envkit::filtfilt_zero_phase(d, Signal(oracle::sine(44100, f, kFs), kFs)).values();
        CHECK_THAT(oracle::sine_amplitude(y, f, kFs), WithinRel(h * h, 0.01));
    }
}

TEST_CASE("chunked envelope stream", "[filtering][stream]") {
    const auto d = design(120.0);
    const BunchSpec spec(35);
    const Signal x(oracle::gaussian(35 * 400, 8), kFs);
    const auto offline = envkit::causal_three_step(d, spec, x);

    SECTION("single chunk equals the offline pipeline") {
        const std::vector<Signal> chunks{x};
        const auto out = envkit::chunked_envelope_stream(d, spec, chunks);
        REQUIRE(out.size() == 1);
        CHECK(out.front() == offline);
    }
    SECTION("four equal chunks") {
        std::vector<Signal> chunks;
        for (int k = 0; k < 4; ++k) {
            const auto begin = x.values().begin() + k * 3500;
            chunks.emplace_back(std::vector<double>(begin, begin + 3500), kFs);
        }
        const auto out = envkit::chunked_envelope_stream(d, spec, chunks);
        CHECK(out.size() == 4);
        CHECK(oracle::rel_diff(concat(out), offline.values()) <= 1e-12);
    }
    SECTION("random bunch-aligned partitions") {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<Signal> chunks;
            std::size_t pos = 0;
            while (pos < x.size()) {
                const std::size_t bunches = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
                const std::size_t len = std::min(bunches * 35, x.size() - pos);
                const auto begin = x.values().begin() + static_cast<long>(pos);
                chunks.emplace_back(std::vector<double>(begin, begin + static_cast<long>(len)), kFs);
                pos += len;
            }
            REQUIRE(oracle::rel_diff(concat(envkit::chunked_envelope_stream(d, spec, chunks)), offline.values()) <= 1e-12);
        }
    }
    SECTION("empty sequence") {
        CHECK(envkit::chunked_envelope_stream(d, spec, std::vector<Signal>{}).empty());
    }
    SECTION("misaligned chunk") {
        const std::vector<Signal> chunks{Signal(std::vector<double>(34, 0.1), kFs)};
        CHECK_THROWS_WITH(envkit::chunked_envelope_stream(d, spec, chunks), ContainsSubstring("chunk not bunch-aligned"));
    }
    SECTION("sample rate change between chunks") {
        envkit::EnvelopeStream stream(d, spec);
        stream.push(Signal(std::vector<double>(35, 0.1), kFs));
        CHECK_THROWS_WITH(stream.push(Signal(std::vector<double>(35, 0.1), 48000.0)),
                          ContainsSubstring("inconsistent sample rate"));
    }
}
