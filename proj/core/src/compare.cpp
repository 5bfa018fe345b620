#include "envkit/compare.hpp"

#include "envkit/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>

namespace envkit {

SampleWindow central_window(std::size_t length) noexcept {
    const std::size_t trim = length / 10;
    return {trim, length - trim};
}

namespace {

void check_window(std::span<const double> a, std::span<const double> b, SampleWindow w) {
    if (a.size() != b.size()) throw ValidationError("signal length mismatch");
    if (w.begin >= w.end || w.end > a.size()) throw ValidationError("empty scoring window");
}

double positive_or_throw(double v) {
    if (!(v > 0.0)) throw ValidationError("reference envelope is zero");
    return v;
}

} // namespace

double relative_rmse(std::span<const double> estimate, std::span<const double> reference, SampleWindow w) {
    check_window(estimate, reference, w);
    double err = 0.0;
    double ref = 0.0;
    for (std::size_t i = w.begin; i < w.end; ++i) {
        const double d = estimate[i] - reference[i];
        err += d * d;
        ref += reference[i] * reference[i];
    }
    return std::sqrt(err / positive_or_throw(ref));
}

double peak_ratio(std::span<const double> estimate, std::span<const double> reference, SampleWindow w) {
    check_window(estimate, reference, w);
    const auto e = estimate.subspan(w.begin, w.size());
    const auto r = reference.subspan(w.begin, w.size());
    return *std::max_element(e.begin(), e.end()) / positive_or_throw(*std::max_element(r.begin(), r.end()));
}

double mean_ratio(std::span<const double> estimate, std::span<const double> reference, SampleWindow w) {
    check_window(estimate, reference, w);
    const auto e = estimate.subspan(w.begin, w.size());
    const auto r = reference.subspan(w.begin, w.size());
    return std::accumulate(e.begin(), e.end(), 0.0) / positive_or_throw(std::accumulate(r.begin(), r.end(), 0.0));
}

double median_runtime_ms(const std::function<void()>& fn, const TimingOptions& opts) {
    for (int i = 0; i < opts.warmup_runs; ++i) fn();
    std::vector<double> times;
    for (int i = 0; i < std::max(1, opts.timed_runs); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    return times.size() % 2 == 1 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
}

ComparisonReport compare_methods(const Signal& s, const std::optional<Signal>& truth,
                                 std::span<const MethodConfig> configs, const TimingOptions& timing) {
    if (configs.empty()) throw ValidationError("no methods configured");
    if (truth && truth->size() != s.size()) throw ValidationError("signal length mismatch");

    std::vector<EnvelopeResult> results;
    std::vector<double> runtimes;
    for (const auto& config : configs) {
        std::optional<EnvelopeResult> result;
        runtimes.push_back(median_runtime_ms([&] { result = run_method(s, config); }, timing));
        results.push_back(std::move(*result));
    }

    ComparisonReport report;
    std::optional<Signal> reference = truth;
    if (!reference) {
        report.reference = Reference::three_step;
        const auto it = std::find_if(results.begin(), results.end(),
                                     [](const EnvelopeResult& r) { return r.method == Method::three_step; });
        reference = it != results.end() ? it->envelope : three_step_envelope(s, EnvelopeParams{}).envelope;
    }

    const SampleWindow w = central_window(s.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto est = results[i].envelope.samples();
        const auto ref = reference->samples();
        report.rows.push_back({results[i].method, describe(results[i].config), relative_rmse(est, ref, w),
                               peak_ratio(est, ref, w), mean_ratio(est, ref, w), runtimes[i]});
    }
    return report;
}

void write_report_csv(std::ostream& os, const ComparisonReport& report) {
    const auto flags = os.flags();
    const auto precision = os.precision();
    os << "method,param_summary,rmse_rel,peak_ratio,mean_ratio,runtime_ms\n";
    os << std::setprecision(9);
    for (const auto& r : report.rows) {
        os << to_string(r.method) << ',' << r.param_summary << ',' << r.rmse_rel << ',' << r.peak_ratio << ','
           << r.mean_ratio << ',' << r.runtime_ms << '\n';
    }
    os.flags(flags);
    os.precision(precision);
}

void write_report_table(std::ostream& os, const ComparisonReport& report) {
    const bool truth = report.reference == Reference::ground_truth;
    const auto flags = os.flags();
    const auto precision = os.precision();
    os << (truth ? "metrics vs ground truth" : "metrics relative to reference = three_step (not an accuracy measure)")
       << '\n';
    os << std::left << std::setw(12) << "method" << std::setw(26) << "params" << std::right << std::setw(12)
       << (truth ? "rmse_rel" : "delta_rel") << std::setw(12) << "peak_ratio" << std::setw(12) << "mean_ratio"
       << std::setw(12) << "runtime_ms" << '\n';
    os << std::fixed << std::setprecision(4);
    for (const auto& r : report.rows) {
        os << std::left << std::setw(12) << to_string(r.method) << std::setw(26) << r.param_summary << std::right
           << std::setw(12) << r.rmse_rel << std::setw(12) << r.peak_ratio << std::setw(12) << r.mean_ratio
           << std::setw(12) << r.runtime_ms << '\n';
    }
    os.flags(flags);
    os.precision(precision);
}

} // namespace envkit
