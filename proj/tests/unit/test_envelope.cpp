#include "catch.hpp"
#include "oracles.hpp"

#include <envkit/envelope.hpp>
#include <envkit/error.hpp>
#include <envkit/synthetic.hpp>

using envkit::EnvelopeParams;
using envkit::Method;
using envkit::Signal;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kFs = 44100.0;

envkit::SyntheticSignal am_tone(double depth = 0.5, double duration = 2.0) {
    envkit::SyntheticSpec spec;
    spec.depth = depth;
    spec.duration_s = duration;
    return envkit::generate(spec);
}

double edge_trimmed_max_error(const std::vector<double>& y, double target, double trim) {
    const auto skip = static_cast<std::size_t>(trim * static_cast<double>(y.size()));
    double m = 0.0;
    for (std::size_t i = skip; i < y.size() - skip; ++i) m = std::max(m, std::abs(y[i] - target));
    return m;
}

} // namespace

TEST_CASE("method names round-trip", "[envelope]") {
    for (Method m : {Method::three_step, Method::follower, Method::rms, Method::hilbert}) {
        CHECK(envkit::parse_method(envkit::to_string(m)) == m);
    }
    CHECK_FALSE(envkit::parse_method("cepstral").has_value());
    CHECK(envkit::describe(EnvelopeParams{35, 120.0, 4}) == "N=35;fc=120;order=4");
    CHECK(envkit::describe(envkit::RmsParams{50}) == "window=50");
}

TEST_CASE("presets match the published parameter table", "[envelope][presets]") {
    struct Row {
        const char* name;
        std::size_t bunch;
        double cutoff;
    };
    const Row table[] = {{"canary", 35, 300.0}, {"whale", 50, 300.0}, {"speech", 50, 100.0}, {"piano", 200, 100.0}};
    for (const auto& row : table) {
        const auto p = envkit::find_preset(row.name);
        REQUIRE(p.has_value());
        CHECK(p->bunch_size == row.bunch);
        CHECK(p->cutoff_hz == row.cutoff);
        CHECK(p->filter_order == 4);
    }
    CHECK_FALSE(envkit::find_preset("none").has_value());
    CHECK_FALSE(envkit::find_preset("violin").has_value());
    CHECK(EnvelopeParams{} == EnvelopeParams{50, 150.0, 4});
}

TEST_CASE("three_step_envelope", "[envelope][three_step]") {
    SECTION("constant level is preserved") {
        const Signal c(std::vector<double>(44100, 0.8), kFs);
        for (const auto& p : {EnvelopeParams{}, EnvelopeParams{35, 300.0, 4}, EnvelopeParams{200, 100.0, 4}}) {
            const auto r = envkit::three_step_envelope(c, p);
            CHECK(r.method == Method::three_step);
            CHECK(oracle::max_abs_diff(r.envelope.values(), c.values()) < 1e-6);
        }
    }
    SECTION("tracks an AM modulator") {
        const auto am = am_tone();
        const auto r = envkit::three_step_envelope(am.signal, {35, 120.0, 4});
        CHECK(oracle::central_rel_rmse(r.envelope.values(), am.envelope.values()) < 0.05);
    }
    SECTION("canary preset runs on a 0.1 s clip") {
        const Signal clip(oracle::gaussian(4410, 3, 0.2), kFs);
        const auto r = envkit::three_step_envelope(clip, *envkit::find_preset("canary"));
        CHECK(r.envelope.size() == clip.size());
    }
    SECTION("cutoff above Nyquist") {
        CHECK_THROWS_WITH(envkit::three_step_envelope(Signal(std::vector<double>(100, 0.1), 8000.0), {35, 4000.0, 4}),
                          ContainsSubstring("cutoff above Nyquist"));
    }
    SECTION("empty input") {
        CHECK_THROWS_AS(envkit::three_step_envelope(Signal({}, kFs), {}), envkit::ValidationError);
    }
    SECTION("trace exposes the staircase") {
        const auto am = am_tone(0.5, 0.5);
        const auto t = envkit::three_step_trace(am.signal, {35, 120.0, 4});
        CHECK(t.staircase.values() == oracle::naive_bunch_max(oracle::naive_abs(am.signal.values()), 35));
        CHECK(t.envelope == envkit::three_step_envelope(am.signal, {35, 120.0, 4}).envelope);
    }
}

TEST_CASE("envelope_follower", "[envelope][follower]") {
    SECTION("constant") {
        const Signal c(std::vector<double>(44100, 0.8), kFs);
        CHECK(oracle::max_abs_diff(envkit::envelope_follower(c, 150.0, 4).envelope.values(), c.values()) < 1e-6);
    }
    SECTION("steady sinusoid settles near 2A/pi") {
        const double a = 0.6;
        const auto y = envkit::envelope_follower(Signal(oracle::sine(44100, 2000.0, kFs, a), kFs), 150.0).envelope.values();
        CHECK_THAT(oracle::central_mean(y), WithinRel(2.0 * a / std::numbers::pi, 0.03));
    }
    SECTION("zero") {
        const auto y = envkit::envelope_follower(Signal(std::vector<double>(1000, 0.0), kFs), 150.0).envelope.values();
        CHECK(oracle::max_abs(y) == 0.0);
    }
}

TEST_CASE("envelope_rms", "[envelope][rms]") {
    SECTION("constant") {
        const auto y = envkit::envelope_rms(Signal(std::vector<double>(500, -0.25), kFs), 50).envelope.values();
        CHECK(oracle::max_abs_diff(y, std::vector<double>(500, 0.25)) < 1e-12);
    }
    SECTION("sinusoid with a long window sits at A/sqrt(2)") {
        const double a = 0.9;
        const auto y = envkit::envelope_rms(Signal(oracle::sine(44100, 1000.0, kFs, a), kFs), 2205).envelope.values();
        CHECK(edge_trimmed_max_error(y, a / std::sqrt(2.0), 0.05) < 0.02 * a / std::sqrt(2.0));
    }
    SECTION("50-sample window mean level") {
        const auto y = envkit::envelope_rms(Signal(oracle::sine(44100, 2000.0, kFs), kFs), 50).envelope.values();
        CHECK_THAT(oracle::central_mean(y), WithinRel(1.0 / std::sqrt(2.0), 0.05));
    }
    SECTION("centered window with edge truncation") {
        // width 4 holds two samples before the center and one after
        const auto y = envkit::envelope_rms(Signal({1.0, 2.0, 3.0, 4.0, 5.0}, 1.0), 4).envelope.values();
        CHECK_THAT(y[0], WithinAbs(std::sqrt((1.0 + 4.0) / 2.0), 1e-15));
        CHECK_THAT(y[2], WithinAbs(std::sqrt((1.0 + 4.0 + 9.0 + 16.0) / 4.0), 1e-15));
        CHECK_THAT(y[4], WithinAbs(std::sqrt((9.0 + 16.0 + 25.0) / 3.0), 1e-15));
    }
    SECTION("invalid window") {
        CHECK_THROWS_WITH(envkit::envelope_rms(Signal({1.0}, 1.0), 0), ContainsSubstring("invalid window"));
    }
}

TEST_CASE("envelope_hilbert", "[envelope][hilbert]") {
    SECTION("sinusoid has constant magnitude away from the edges") {
        const double a = 0.75;
        const auto y = envkit::envelope_hilbert(Signal(oracle::sine(44100, 1000.3, kFs, a), kFs)).envelope.values();
        CHECK(edge_trimmed_max_error(y, a, 0.05) < 0.01 * a);
    }
    SECTION("constant passes through") {
        const auto y = envkit::envelope_hilbert(Signal(std::vector<double>(257, -0.4), kFs)).envelope.values();
        CHECK(oracle::max_abs_diff(y, std::vector<double>(257, 0.4)) < 1e-12);
    }
    SECTION("odd and even lengths") {
        for (std::size_t n : {1, 2, 3, 1000, 1001}) {
            CHECK(envkit::envelope_hilbert(Signal(oracle::gaussian(n, n), kFs)).envelope.size() == n);
        }
    }
    SECTION("narrowband AM is tracked") {
        const auto am = am_tone();
        const auto y = envkit::envelope_hilbert(am.signal).envelope.values();
        CHECK(oracle::central_rel_rmse(y, am.envelope.values()) < 0.02);
    }
    SECTION("broadband content defeats it") {
        envkit::SyntheticSpec spec;
        spec.kind = envkit::SyntheticKind::multi_carrier_am;
        spec.carriers_hz = {1000.0, 2718.3, 4142.1};
        const auto mc = envkit::generate(spec);
        const auto y = envkit::envelope_hilbert(mc.signal).envelope.values();
        CHECK(oracle::central_rel_rmse(y, mc.envelope.values()) > 0.10);
    }
    SECTION("empty input") {
        CHECK_THROWS_WITH(envkit::envelope_hilbert(Signal({}, kFs)), ContainsSubstring("empty input"));
    }
}

TEST_CASE("all methods are positively homogeneous", "[envelope][property]") {
    const std::vector<envkit::MethodConfig> configs{EnvelopeParams{35, 120.0, 4}, envkit::FollowerParams{150.0, 4},
                                                    envkit::RmsParams{50}, envkit::HilbertParams{}};
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Signal s(oracle::gaussian(8192, seed, 0.3), kFs);
        for (const auto& config : configs) {
            const auto base = envkit::run_method(s, config).envelope;
            for (double a : {0.1, 1.0, 10.0}) {
                const auto scaled = envkit::run_method(s.scaled(a), config).envelope;
                INFO(envkit::to_string(envkit::method_of(config)) << " a=" << a);
                CHECK(oracle::rel_diff(scaled.values(), base.scaled(a).values()) < 1e-9);
            }
        }
    }
}

TEST_CASE("lengths and rates are preserved", "[envelope][property]") {
    const Signal s(oracle::gaussian(3001, 4), 22050.0);
    for (const envkit::MethodConfig& config : {envkit::MethodConfig{EnvelopeParams{}}, envkit::MethodConfig{envkit::FollowerParams{}},
                                               envkit::MethodConfig{envkit::RmsParams{}}, envkit::MethodConfig{envkit::HilbertParams{}}}) {
        const auto r = envkit::run_method(s, config);
        CHECK(r.envelope.size() == s.size());
        CHECK(r.envelope.sample_rate() == s.sample_rate());
        CHECK(r.method == envkit::method_of(config));
        CHECK(r.config == config);
    }
}

TEST_CASE("three-step envelope undershoots zero only slightly", "[envelope][property]") {
    for (auto kind : {envkit::SyntheticKind::am_tone, envkit::SyntheticKind::noise_burst, envkit::SyntheticKind::chirp_am}) {
        envkit::SyntheticSpec spec;
        spec.kind = kind;
        spec.carriers_hz = kind == envkit::SyntheticKind::chirp_am ? std::vector<double>{1000.0, 5000.0}
                                                                   : std::vector<double>{2000.0};
        spec.depth = 1.0;
        const auto syn = envkit::generate(spec);
        const auto t = envkit::three_step_trace(syn.signal, {35, 120.0, 4});
        for (double v : t.staircase.values()) REQUIRE(v >= 0.0);
        const auto& env = t.envelope.values();
        CHECK(*std::min_element(env.begin(), env.end()) >= -0.02 * *std::max_element(env.begin(), env.end()));
        for (std::size_t i = 0; i < env.size(); ++i) REQUIRE(t.staircase[i] >= std::abs(syn.signal[i]));
    }
}

TEST_CASE("attenuation ordering on a steady sinusoid", "[envelope][property]") {
    for (double a : {0.25, 1.0}) {
        for (double f : {1500.0, 2000.0, 3000.0}) {
            const Signal s(oracle::sine(44100, f, kFs, a), kFs);
            const double three = oracle::central_mean(envkit::three_step_envelope(s, {35, 120.0, 4}).envelope.values());
            const double rms = oracle::central_mean(envkit::envelope_rms(s, 50).envelope.values());
            const double follower = oracle::central_mean(envkit::envelope_follower(s, 150.0).envelope.values());
            INFO("A=" << a << " f=" << f);
            CHECK(three > rms);
            CHECK(rms > follower);
            CHECK_THAT(three, WithinRel(a, 0.05));
            CHECK_THAT(rms, WithinRel(a / std::sqrt(2.0), 0.05));
            CHECK_THAT(follower, WithinRel(2.0 * a / std::numbers::pi, 0.05));
        }
    }
}
