#include "envkit/envelope.hpp"
#include "envkit/error.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>

namespace envkit {

namespace {

// FFTW's planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
        if (data == nullptr) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    fftw_complex* data;
};

class FftwPlan {
public:
    FftwPlan(std::size_t n, fftw_complex* buf, int sign) {
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE);
        if (plan_ == nullptr) throw Error("fftw planning failed");
    }
    ~FftwPlan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    FftwPlan(const FftwPlan&) = delete;
    FftwPlan& operator=(const FftwPlan&) = delete;

    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

} // namespace

EnvelopeResult envelope_hilbert(const Signal& s) {
    if (s.empty()) throw ValidationError("empty input");

    const std::size_t n = s.size();
    FftwBuffer buf(n);
    FftwPlan forward(n, buf.data, FFTW_FORWARD);
    FftwPlan inverse(n, buf.data, FFTW_BACKWARD);

    for (std::size_t i = 0; i < n; ++i) {
        buf.data[i][0] = s[i];
        buf.data[i][1] = 0.0;
    }
    forward.execute();

    // Analytic-signal weights: DC (and Nyquist for even n) x1, positive
    // frequencies x2, negative frequencies x0.
    const std::size_t positive_end = (n + 1) / 2; // exclusive
    for (std::size_t k = 1; k < positive_end; ++k) {
        buf.data[k][0] *= 2.0;
        buf.data[k][1] *= 2.0;
    }
    const std::size_t negative_begin = n / 2 + 1;
    for (std::size_t k = negative_begin; k < n; ++k) {
        buf.data[k][0] = 0.0;
        buf.data[k][1] = 0.0;
    }

    inverse.execute();

    std::vector<double> out(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::hypot(buf.data[i][0], buf.data[i][1]) * scale;
    return {Signal(std::move(out), s.sample_rate()), Method::hilbert, HilbertParams{}};
}

} // namespace envkit
