#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace envkit {

/// Uniformly sampled real-valued sequence.
///
/// Holds the input waveform, its rectified form, the bunch-max staircase and
/// the final envelope alike. Construction validates that the sample rate is
/// positive and that every sample is finite; once built a Signal is
/// immutable.
class Signal {
public:
    Signal(std::vector<double> samples, double sample_rate_hz);

    std::span<const double> samples() const noexcept { return samples_; }
    const std::vector<double>& values() const noexcept { return samples_; }
    double sample_rate() const noexcept { return sample_rate_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    double operator[](std::size_t i) const noexcept { return samples_[i]; }

    /// Duration in seconds.
    double duration() const noexcept { return static_cast<double>(samples_.size()) / sample_rate_; }

    /// Returns a copy with every sample multiplied by `gain`.
    Signal scaled(double gain) const;

    /// Returns a time-reversed copy.
    Signal reversed() const;

    friend bool operator==(const Signal&, const Signal&) = default;

private:
    std::vector<double> samples_;
    double sample_rate_;
};

/// Number of samples per non-overlapping bunch (N >= 1).
class BunchSpec {
public:
    explicit BunchSpec(std::size_t bunch_size);

    std::size_t size() const noexcept { return size_; }

    /// Number of bunches covering `length` samples, counting a partial tail.
    std::size_t bunch_count(std::size_t length) const noexcept { return (length + size_ - 1) / size_; }

private:
    std::size_t size_;
};

/// Elementwise absolute value. Length and sample rate are preserved.
Signal rectify(const Signal& s);

/// Replaces every sample of each non-overlapping bunch of `spec.size()`
/// samples by the bunch maximum. A trailing partial bunch uses the maximum
/// of the samples it holds. Throws ValidationError on an empty signal.
Signal bunch_max(const Signal& s, const BunchSpec& spec);

/// Index of the maximum of each bunch; ties resolve to the first occurrence.
std::vector<std::size_t> bunch_peak_indices(const Signal& s, const BunchSpec& spec);

} // namespace envkit
