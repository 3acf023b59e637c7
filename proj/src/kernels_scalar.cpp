#include "voltlab/kernels.hpp"

namespace voltlab::kernels {

namespace {

double sum_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq_dev_scalar(const double* x, std::size_t n, double mean) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - mean;
        s += d * d;
    }
    return s;
}

Moments central_moments_scalar(const double* x, std::size_t n, double mean) {
    Moments m;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - mean;
        const double d2 = d * d;
        m.m2 += d2;
        m.m3 += d2 * d;
        m.m4 += d2 * d2;
    }
    return m;
}

double lagged_cross_scalar(const double* x, std::size_t n, std::size_t lag, double mean) {
    double s = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) s += (x[t] - mean) * (x[t + lag] - mean);
    return s;
}

double sq_ratio_sum_scalar(const double* e, const double* s2, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += e[i] * e[i] / s2[i];
    return s;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
    static const KernelTable table{
        Isa::scalar,         "scalar",           sum_scalar,          dot_scalar,
        sum_sq_dev_scalar,   central_moments_scalar, lagged_cross_scalar, sq_ratio_sum_scalar,
    };
    return table;
}

}  // namespace voltlab::kernels
