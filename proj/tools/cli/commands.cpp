#include "commands.hpp"

#include <envkit/envkit.hpp>

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace envkit::cli {

namespace {

namespace fs = std::filesystem;

enum class OutputFormat { wav, csv, both };

/// Everything a subcommand may read; fields a subcommand does not register
/// keep their defaults.
struct RunConfig {
    std::vector<std::string> inputs;
    std::string output;
    std::string format;
    std::string method = "three_step";
    std::string preset = "none";
    std::optional<std::size_t> bunch_size;
    std::optional<double> cutoff_hz;
    int order = 4;
    std::size_t rms_window = 50;
    std::string channel = "mean";
    std::string bits = "32f";

    // compare
    std::vector<std::string> methods{"three_step", "follower", "rms"};
    bool with_hilbert = false;
    double follower_cutoff_hz = kComparisonFollower.cutoff_hz;
    int runs = 5;
    int warmup = 1;

    // synth and synthetic inputs
    std::string kind = "am_tone";
    std::vector<double> carriers_hz;
    double modulator_hz = 5.0;
    double depth = 0.5;
    double duration_s = 2.0;
    double sample_rate_hz = 44100.0;
    std::uint64_t seed = 0;

    // bench
    double budget_ms = 500.0;

    // filter-dump
    std::size_t points = 512;
};

std::string format_number(double v, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

ChannelMode parse_channel(const std::string& text) {
    if (text == "mean") return ChannelMode::mean();
    std::size_t k = 0;
    std::istringstream is(text);
    if (!(is >> k) || !is.eof()) throw ValidationError("invalid channel mode '" + text + "': use mean or an index");
    return ChannelMode::select(k);
}

WavEncoding parse_bits(const std::string& text) {
    if (text == "16") return WavEncoding::pcm16;
    if (text == "32f") return WavEncoding::float32;
    throw ValidationError("invalid --bits '" + text + "': use 16 or 32f");
}

OutputFormat resolve_format(const std::string& format, const std::string& output) {
    if (format == "wav") return OutputFormat::wav;
    if (format == "csv") return OutputFormat::csv;
    if (format == "both") return OutputFormat::both;
    if (!format.empty()) throw ValidationError("invalid --format '" + format + "': use wav, csv or both");
    if (output.empty()) return OutputFormat::csv;
    const auto ext = fs::path(output).extension();
    if (ext == ".wav") return OutputFormat::wav;
    if (ext == ".csv") return OutputFormat::csv;
    throw ValidationError("cannot infer output format from '" + output + "': pass --format");
}

fs::path with_extension(fs::path p, const char* ext) {
    p.replace_extension(ext);
    return p;
}

EnvelopeParams resolve_params(const RunConfig& cfg) {
    EnvelopeParams p;
    if (cfg.preset != "none") {
        auto preset = find_preset(cfg.preset);
        if (!preset) throw ValidationError("unknown preset '" + cfg.preset + "'");
        p = *preset;
    }
    if (cfg.bunch_size) p.bunch_size = *cfg.bunch_size;
    if (cfg.cutoff_hz) p.cutoff_hz = *cfg.cutoff_hz;
    p.filter_order = cfg.order;
    return p;
}

Method require_method(const std::string& name) {
    auto m = parse_method(name);
    if (!m) throw ValidationError("unknown method '" + name + "'");
    return *m;
}

std::vector<double> default_carriers(SyntheticKind kind) {
    switch (kind) {
    case SyntheticKind::am_tone: return {2000.0};
    case SyntheticKind::multi_carrier_am: return {1000.0, 2718.3, 4142.1};
    case SyntheticKind::chirp_am: return {1000.0, 4000.0};
    case SyntheticKind::noise_burst: return {};
    }
    return {};
}

SyntheticSpec synthetic_spec(const RunConfig& cfg) {
    auto kind = parse_synthetic_kind(cfg.kind);
    if (!kind) throw ValidationError("unknown synthetic kind '" + cfg.kind + "'");
    SyntheticSpec spec;
    spec.kind = *kind;
    spec.carriers_hz = cfg.carriers_hz.empty() ? default_carriers(*kind) : cfg.carriers_hz;
    spec.modulator_hz = cfg.modulator_hz;
    spec.depth = cfg.depth;
    spec.duration_s = cfg.duration_s;
    spec.sample_rate_hz = cfg.sample_rate_hz;
    spec.seed = cfg.seed;
    return spec;
}

void add_synthetic_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--kind", cfg.kind, "am_tone, multi_carrier_am, chirp_am or noise_burst")->capture_default_str();
    cmd->add_option("--carrier", cfg.carriers_hz, "Carrier frequency in Hz (repeat for several)");
    cmd->add_option("--modulator", cfg.modulator_hz, "Modulator frequency in Hz")->capture_default_str();
    cmd->add_option("--depth", cfg.depth, "Modulation depth in [0, 1]")->capture_default_str();
    cmd->add_option("--duration", cfg.duration_s, "Duration in seconds")->capture_default_str();
    cmd->add_option("--rate", cfg.sample_rate_hz, "Sample rate in Hz")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Noise seed")->capture_default_str();
}

// ---------------------------------------------------------------------------
// envelope

struct EnvelopeJob {
    std::string summary;
};

EnvelopeJob envelope_one(const RunConfig& cfg, const std::string& input, const fs::path& output, OutputFormat format) {
    const Signal s = to_mono(read_wav(input), parse_channel(cfg.channel));
    const Method method = require_method(cfg.method);

    MethodConfig config;
    switch (method) {
    case Method::three_step: config = resolve_params(cfg); break;
    case Method::follower: config = FollowerParams{cfg.cutoff_hz.value_or(EnvelopeParams{}.cutoff_hz), cfg.order}; break;
    case Method::rms: config = RmsParams{cfg.rms_window}; break;
    case Method::hilbert: config = HilbertParams{}; break;
    }

    const auto t0 = std::chrono::steady_clock::now();
    std::optional<ThreeStepTrace> trace;
    std::optional<EnvelopeResult> result;
    if (method == Method::three_step) {
        trace = three_step_trace(s, std::get<EnvelopeParams>(config));
    } else {
        result = run_method(s, config);
    }
    const double runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const Signal& envelope = trace ? trace->envelope : result->envelope;

    std::size_t clipped = 0;
    if (format == OutputFormat::wav || format == OutputFormat::both) {
        clipped = write_wav(with_extension(output, ".wav"), envelope, parse_bits(cfg.bits)).clipped_samples;
    }
    if (format == OutputFormat::csv || format == OutputFormat::both) {
        const Signal rectified = trace ? trace->rectified : rectify(s);
        std::vector<CsvColumn> cols{{"signal", s}, {"abs", rectified}};
        if (trace) cols.push_back({"staircase", trace->staircase});
        cols.push_back({"envelope", envelope});
        write_csv(with_extension(output, ".csv"), cols);
    }

    std::ostringstream line;
    line << "envelope: " << input << " samples=" << s.size() << " rate_hz=" << format_number(s.sample_rate(), 9)
         << " method=" << to_string(method) << ' ' << describe(config)
         << " runtime_ms=" << format_number(runtime_ms, 4);
    if (clipped > 0) line << " clipped=" << clipped;
    line << " output=" << output.string();
    return {line.str()};
}

int cmd_envelope(const RunConfig& cfg, std::ostream& out) {
    if (cfg.inputs.size() > 1 && !cfg.output.empty()) {
        throw ValidationError("-o/--output takes a single input; omit it to write next to each input");
    }
    const OutputFormat format = resolve_format(cfg.format, cfg.output);

    std::vector<std::future<EnvelopeJob>> jobs;
    for (const auto& input : cfg.inputs) {
        fs::path output = cfg.output;
        if (output.empty()) {
            const fs::path in(input);
            output = in.parent_path() / (in.stem().string() + "_envelope");
        }
        jobs.push_back(std::async(std::launch::async, envelope_one, std::cref(cfg), input, output, format));
    }
    // get() in input order rethrows the first failure.
    std::vector<std::string> lines;
    for (auto& j : jobs) lines.push_back(j.get().summary);
    for (const auto& l : lines) out << l << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------
// compare

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
    std::optional<Signal> truth;
    std::optional<Signal> signal;
    if (cfg.inputs.empty()) {
        auto synth = generate(synthetic_spec(cfg));
        signal = std::move(synth.signal);
        truth = std::move(synth.envelope);
    } else {
        signal = to_mono(read_wav(cfg.inputs.front()), parse_channel(cfg.channel));
    }

    EnvelopeParams three_step = kComparisonThreeStep;
    if (cfg.preset != "none" || cfg.bunch_size || cfg.cutoff_hz) {
        three_step = resolve_params(cfg);
        if (cfg.preset == "none") {
            three_step.bunch_size = cfg.bunch_size.value_or(kComparisonThreeStep.bunch_size);
            three_step.cutoff_hz = cfg.cutoff_hz.value_or(kComparisonThreeStep.cutoff_hz);
        }
    }
    three_step.filter_order = cfg.order;

    std::vector<std::string> names = cfg.methods;
    if (cfg.with_hilbert && std::find(names.begin(), names.end(), "hilbert") == names.end()) names.push_back("hilbert");

    std::vector<MethodConfig> configs;
    for (const auto& name : names) {
        switch (require_method(name)) {
        case Method::three_step: configs.emplace_back(three_step); break;
        case Method::follower: configs.emplace_back(FollowerParams{cfg.follower_cutoff_hz, cfg.order}); break;
        case Method::rms: configs.emplace_back(RmsParams{cfg.rms_window}); break;
        case Method::hilbert: configs.emplace_back(HilbertParams{}); break;
        }
    }

    const auto report = compare_methods(*signal, truth, configs, {cfg.warmup, cfg.runs});
    write_report_table(out, report);

    auto rows = report.rows;
    std::stable_sort(rows.begin(), rows.end(),
                     [](const MethodMetrics& a, const MethodMetrics& b) { return a.mean_ratio > b.mean_ratio; });
    out << "attenuation ordering (mean level, high to low):";
    for (std::size_t i = 0; i < rows.size(); ++i) out << (i == 0 ? " " : " > ") << to_string(rows[i].method);
    out << '\n';

    if (!cfg.output.empty()) {
        std::ofstream csv(cfg.output, std::ios::trunc);
        if (!csv) throw IoError(cfg.output + ": cannot open for writing");
        write_report_csv(csv, report);
        if (!csv) throw IoError(cfg.output + ": write failed");
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// synth

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
    const auto spec = synthetic_spec(cfg);
    const OutputFormat format = resolve_format(cfg.format, cfg.output);
    const auto synth = generate(spec);
    const fs::path output = cfg.output;

    if (format == OutputFormat::wav || format == OutputFormat::both) {
        const fs::path wav = with_extension(output, ".wav");
        write_wav(wav, synth.signal, parse_bits(cfg.bits));
        write_wav(wav.parent_path() / (wav.stem().string() + "_truth.wav"), synth.envelope, parse_bits(cfg.bits));
    }
    if (format == OutputFormat::csv || format == OutputFormat::both) {
        const std::vector<CsvColumn> cols{{"signal", synth.signal}, {"truth", synth.envelope}};
        write_csv(with_extension(output, ".csv"), cols);
    }
    out << "synth: kind=" << to_string(spec.kind) << " samples=" << synth.signal.size()
        << " rate_hz=" << format_number(spec.sample_rate_hz, 9) << " output=" << output.string() << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------
// bench

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
    RunConfig synth_cfg = cfg;
    synth_cfg.kind = "am_tone";
    const auto synth = generate(synthetic_spec(synth_cfg));

    EnvelopeParams params = kComparisonThreeStep;
    if (cfg.preset != "none") params = resolve_params(cfg);
    if (cfg.bunch_size) params.bunch_size = *cfg.bunch_size;
    if (cfg.cutoff_hz) params.cutoff_hz = *cfg.cutoff_hz;
    params.filter_order = cfg.order;

    const double median = median_runtime_ms([&] { (void)three_step_envelope(synth.signal, params); },
                                            {cfg.warmup, cfg.runs});
    const bool pass = median < cfg.budget_ms;
    out << "bench: samples=" << synth.signal.size() << " rate_hz=" << format_number(cfg.sample_rate_hz, 9)
        << " duration_s=" << format_number(cfg.duration_s, 9) << ' ' << describe(params)
        << " median_ms=" << format_number(median, 6) << " budget_ms=" << format_number(cfg.budget_ms, 9) << ' '
        << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? kOk : kBenchmarkFailed;
}

// ---------------------------------------------------------------------------
// filter-dump

void write_response_csv(std::ostream& os, const FilterDesign& design, std::size_t points) {
    const double nyquist = design.sample_rate_hz / 2.0;
    std::vector<double> freqs{design.cutoff_hz};
    for (std::size_t i = 0; i < points; ++i) {
        freqs.push_back(points == 1 ? 0.0 : nyquist * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    std::sort(freqs.begin(), freqs.end());
    freqs.erase(std::unique(freqs.begin(), freqs.end()), freqs.end());

    const auto h = frequency_response(design, freqs, design.sample_rate_hz);
    os << "freq_hz,magnitude_db,phase_deg\n";
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        // Floor at -400 dB: the response is exactly zero at Nyquist.
        const double db = std::max(20.0 * std::log10(std::abs(h[i])), -400.0);
        const double phase = std::arg(h[i]) * 180.0 / std::numbers::pi;
        os << format_number(freqs[i], 9) << ',' << format_number(db + 0.0, 9) << ',' << format_number(phase + 0.0, 9)
           << '\n';
    }
}

int cmd_filter_dump(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.cutoff_hz) throw ValidationError("--cutoff is required");
    if (cfg.points < 1) throw ValidationError("--points must be at least 1");
    const FilterDesign design = butterworth_lowpass({cfg.order, *cfg.cutoff_hz, cfg.sample_rate_hz});

    out << "# butterworth lowpass order=" << design.order << " cutoff_hz=" << format_number(design.cutoff_hz, 17)
        << " sample_rate_hz=" << format_number(design.sample_rate_hz, 17) << '\n';
    out << "# b0 b1 b2 a0 a1 a2\n";
    for (const auto& s : design.sections) {
        out << format_number(s.b0, 17) << ' ' << format_number(s.b1, 17) << ' ' << format_number(s.b2, 17) << " 1 "
            << format_number(s.a1, 17) << ' ' << format_number(s.a2, 17) << '\n';
    }

    if (cfg.output.empty()) {
        out << '\n';
        write_response_csv(out, design, cfg.points);
    } else {
        std::ofstream csv(cfg.output, std::ios::trunc);
        if (!csv) throw IoError(cfg.output + ": cannot open for writing");
        write_response_csv(csv, design, cfg.points);
        if (!csv) throw IoError(cfg.output + ": write failed");
    }
    return kOk;
}

// ---------------------------------------------------------------------------

void add_param_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--preset", cfg.preset, "canary, whale, speech, piano or none")->capture_default_str();
    cmd->add_option("--bunch", cfg.bunch_size, "Bunch size in samples");
    cmd->add_option("--cutoff", cfg.cutoff_hz, "Low-pass cutoff in Hz");
    cmd->add_option("--order", cfg.order, "Butterworth order")->capture_default_str();
    cmd->add_option("--rms-window", cfg.rms_window, "RMS window in samples")->capture_default_str();
    cmd->add_option("--channel", cfg.channel, "mean or a zero-based channel index")->capture_default_str();
}

void single_line(std::ostream& err, const std::string& prefix, std::string msg) {
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << prefix << msg << '\n';
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Amplitude envelopes of audio and other sampled signals", "envkit"};
    app.require_subcommand(1);

    auto* envelope = app.add_subcommand("envelope", "Compute the envelope of WAV files");
    envelope->add_option("input", cfg.inputs, "Input WAV file(s)")->required();
    envelope->add_option("-o,--output", cfg.output, "Output path (.wav or .csv)");
    envelope->add_option("--format", cfg.format, "wav, csv or both");
    envelope->add_option("--method", cfg.method, "three_step, follower, rms or hilbert")->capture_default_str();
    envelope->add_option("--bits", cfg.bits, "WAV output encoding: 16 or 32f")->capture_default_str();
    add_param_options(envelope, cfg);

    auto* compare = app.add_subcommand("compare", "Compare envelope methods on a WAV file or a synthetic AM tone");
    compare->add_option("input", cfg.inputs, "Input WAV file; omit for a synthetic signal")->expected(0, 1);
    compare->add_option("-o,--output", cfg.output, "Report CSV path");
    compare->add_option("--methods", cfg.methods, "Methods to run")->delimiter(',')->capture_default_str();
    compare->add_flag("--with-hilbert", cfg.with_hilbert, "Add the Hilbert baseline");
    compare->add_option("--follower-cutoff", cfg.follower_cutoff_hz, "Envelope follower cutoff in Hz")
        ->capture_default_str();
    compare->add_option("--runs", cfg.runs, "Timed runs per method")->capture_default_str();
    compare->add_option("--warmup", cfg.warmup, "Untimed warmup runs per method")->capture_default_str();
    add_param_options(compare, cfg);
    add_synthetic_options(compare, cfg);

    auto* synth = app.add_subcommand("synth", "Write a synthetic signal and its true envelope");
    synth->add_option("-o,--output", cfg.output, "Output path (.wav or .csv)")->required();
    synth->add_option("--format", cfg.format, "wav, csv or both");
    synth->add_option("--bits", cfg.bits, "WAV encoding: 16 or 32f")->capture_default_str();
    add_synthetic_options(synth, cfg);

    auto* bench = app.add_subcommand("bench", "Time the three-step envelope against a budget");
    bench->add_option("--duration", cfg.duration_s, "Signal duration in seconds")->default_val(1.5);
    bench->add_option("--rate", cfg.sample_rate_hz, "Sample rate in Hz")->capture_default_str();
    bench->add_option("--budget-ms", cfg.budget_ms, "Pass/fail budget for the median")->capture_default_str();
    bench->add_option("--preset", cfg.preset, "canary, whale, speech, piano or none")->capture_default_str();
    bench->add_option("--bunch", cfg.bunch_size, "Bunch size in samples");
    bench->add_option("--cutoff", cfg.cutoff_hz, "Low-pass cutoff in Hz");
    bench->add_option("--order", cfg.order, "Butterworth order")->capture_default_str();
    bench->add_option("--runs", cfg.runs, "Timed runs")->capture_default_str();
    bench->add_option("--warmup", cfg.warmup, "Untimed warmup runs")->capture_default_str();

    auto* dump = app.add_subcommand("filter-dump", "Print Butterworth coefficients and frequency response");
    dump->add_option("--order", cfg.order, "Filter order")->capture_default_str();
    dump->add_option("--cutoff", cfg.cutoff_hz, "Cutoff in Hz")->required();
    dump->add_option("--rate", cfg.sample_rate_hz, "Sample rate in Hz")->capture_default_str();
    dump->add_option("--points", cfg.points, "Frequency grid points from DC to Nyquist")->capture_default_str();
    dump->add_option("-o,--output", cfg.output, "Write the response CSV here instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        single_line(err, "envkit: error: ", e.what());
        return kValidationError;
    }

    try {
        if (*envelope) return cmd_envelope(cfg, out);
        if (*compare) return cmd_compare(cfg, out);
        if (*synth) return cmd_synth(cfg, out);
        if (*bench) return cmd_bench(cfg, out);
        if (*dump) return cmd_filter_dump(cfg, out);
    } catch (const ValidationError& e) {
        single_line(err, "envkit: error: ", e.what());
        return kValidationError;
    } catch (const IoError& e) {
        single_line(err, "envkit: error: ", e.what());
        return kIoError;
    } catch (const std::exception& e) {
        single_line(err, "envkit: error: ", e.what());
        return kIoError;
    }
    return kValidationError;
}

} // namespace envkit::cli
