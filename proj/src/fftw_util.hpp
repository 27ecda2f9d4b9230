#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <vector>

namespace xsblab {

// Plan creation is the only FFTW entry point that is not thread-safe.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// One real-to-real transform of fixed length.  Planned with
// FFTW_ESTIMATE (deterministic plan choice, reproducible roundoff) and
// FFTW_UNALIGNED (safe new-array execution on any buffer).
class R2RPlan {
public:
    R2RPlan() = default;
    R2RPlan(int n, fftw_r2r_kind kind) : n_(n) {
        std::vector<double> scratch_in(n), scratch_out(n);
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan_ = fftw_plan_r2r_1d(n, scratch_in.data(), scratch_out.data(), kind,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    R2RPlan(R2RPlan&& o) noexcept : plan_(o.plan_), n_(o.n_) { o.plan_ = nullptr; }
    R2RPlan& operator=(R2RPlan&& o) noexcept {
        if (this != &o) {
            release();
            plan_ = o.plan_;
            n_ = o.n_;
            o.plan_ = nullptr;
        }
        return *this;
    }
    R2RPlan(const R2RPlan&) = delete;
    R2RPlan& operator=(const R2RPlan&) = delete;
    ~R2RPlan() { release(); }

    int size() const { return n_; }
    void exec(double* in, double* out) const { fftw_execute_r2r(plan_, in, out); }

private:
    void release() {
        if (plan_) {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            fftw_destroy_plan(plan_);
            plan_ = nullptr;
        }
    }
    fftw_plan plan_ = nullptr;
    int n_ = 0;
};

// Batch of contiguous 1-D complex transforms (rows of length n, count rows).
class C2CBatchPlan {
public:
    C2CBatchPlan() = default;
    C2CBatchPlan(int n, int rows, int sign) : n_(n), rows_(rows) {
        std::vector<std::complex<double>> scratch((size_t)n * rows);
        auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan_ = fftw_plan_many_dft(1, &n, rows, p, nullptr, 1, n, p, nullptr, 1, n, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    C2CBatchPlan(C2CBatchPlan&& o) noexcept : plan_(o.plan_), n_(o.n_), rows_(o.rows_) {
        o.plan_ = nullptr;
    }
    C2CBatchPlan& operator=(C2CBatchPlan&& o) noexcept {
        if (this != &o) {
            release();
            plan_ = o.plan_;
            n_ = o.n_;
            rows_ = o.rows_;
            o.plan_ = nullptr;
        }
        return *this;
    }
    C2CBatchPlan(const C2CBatchPlan&) = delete;
    C2CBatchPlan& operator=(const C2CBatchPlan&) = delete;
    ~C2CBatchPlan() { release(); }

    // Planned in-place, so new-array execution must also be in-place.
    void exec_inplace(std::complex<double>* buf) const {
        fftw_execute_dft(plan_, reinterpret_cast<fftw_complex*>(buf),
                         reinterpret_cast<fftw_complex*>(buf));
    }

private:
    void release() {
        if (plan_) {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            fftw_destroy_plan(plan_);
            plan_ = nullptr;
        }
    }
    fftw_plan plan_ = nullptr;
    int n_ = 0;
    int rows_ = 0;
};

} // namespace xsblab
