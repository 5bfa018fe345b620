#pragma once

#include "envkit/envelope.hpp"
#include "envkit/signal.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace envkit {

/// Half-open index range [begin, end).
struct SampleWindow {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const noexcept { return end - begin; }
};

/// Middle 80% of `length` samples: 10% trimmed from each end.
SampleWindow central_window(std::size_t length) noexcept;

/// sqrt(mean((est - ref)^2)) / sqrt(mean(ref^2)) over `w`.
double relative_rmse(std::span<const double> estimate, std::span<const double> reference, SampleWindow w);
/// max(est) / max(ref) over `w`.
double peak_ratio(std::span<const double> estimate, std::span<const double> reference, SampleWindow w);
/// mean(est) / mean(ref) over `w`.
double mean_ratio(std::span<const double> estimate, std::span<const double> reference, SampleWindow w);

/// What the metrics are measured against.
enum class Reference { ground_truth, three_step };

struct MethodMetrics {
    Method method;
    std::string param_summary;
    double rmse_rel = 0.0;
    double peak_ratio = 0.0;
    double mean_ratio = 0.0;
    double runtime_ms = 0.0;
};

struct ComparisonReport {
    Reference reference = Reference::ground_truth;
    std::vector<MethodMetrics> rows;
};

struct TimingOptions {
    int warmup_runs = 1;
    int timed_runs = 5;
};

/// Median wall-clock milliseconds of `fn` over `opts.timed_runs` calls after
/// `opts.warmup_runs` untimed calls.
double median_runtime_ms(const std::function<void()>& fn, const TimingOptions& opts = {});

/// Runs every configured method on `s` and scores it on the central 80%.
///
/// With `truth` the scores are errors against it. Without, they are taken
/// relative to the three-step envelope (the first three-step config, or the
/// default parameters when none is configured) and the report says so.
///
/// Throws ValidationError("no methods configured") for an empty config list,
/// ValidationError("signal length mismatch") when truth and signal differ in
/// length, and ValidationError("reference envelope is zero") when the
/// reference carries no energy in the scoring window.
ComparisonReport compare_methods(const Signal& s, const std::optional<Signal>& truth,
                                 std::span<const MethodConfig> configs, const TimingOptions& timing = {});

/// method,param_summary,rmse_rel,peak_ratio,mean_ratio,runtime_ms
void write_report_csv(std::ostream& os, const ComparisonReport& report);
/// Aligned plain-text table.
void write_report_table(std::ostream& os, const ComparisonReport& report);

} // namespace envkit
