#pragma once

#include <cstddef>
#include <span>

// Reduction kernels behind the descriptive statistics, autocorrelations and
// the Gaussian likelihood. Each kernel has a scalar reference version and,
// on x86-64 builds, an AVX2+FMA version; the active table is chosen once at
// first use from CPUID. Setting VOLTLAB_KERNELS=scalar forces the reference
// path.

namespace voltlab::kernels {

enum class Isa { scalar, avx2 };

struct Moments {
    double m2 = 0.0;  ///< sum of d^2
    double m3 = 0.0;  ///< sum of d^3
    double m4 = 0.0;  ///< sum of d^4
};

struct KernelTable {
    Isa isa;
    const char* name;
    double (*sum)(const double* x, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// sum (x - mean)^2
    double (*sum_sq_dev)(const double* x, std::size_t n, double mean);
    /// sums of the 2nd, 3rd and 4th powers of (x - mean)
    Moments (*central_moments)(const double* x, std::size_t n, double mean);
    /// sum_{t < n - lag} (x[t] - mean) * (x[t + lag] - mean)
    double (*lagged_cross)(const double* x, std::size_t n, std::size_t lag, double mean);
    /// sum e[t]^2 / s2[t]
    double (*sq_ratio_sum)(const double* e, const double* s2, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
/// Null when the build has no AVX2 kernels or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table() noexcept;
const KernelTable& active_table() noexcept;

inline double sum(std::span<const double> x) { return active_table().sum(x.data(), x.size()); }

inline double dot(std::span<const double> a, std::span<const double> b) {
    return active_table().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline double sum_sq_dev(std::span<const double> x, double mean) {
    return active_table().sum_sq_dev(x.data(), x.size(), mean);
}

inline Moments central_moments(std::span<const double> x, double mean) {
    return active_table().central_moments(x.data(), x.size(), mean);
}

inline double lagged_cross(std::span<const double> x, std::size_t lag, double mean) {
    return active_table().lagged_cross(x.data(), x.size(), lag, mean);
}

inline double sq_ratio_sum(std::span<const double> e, std::span<const double> s2) {
    return active_table().sq_ratio_sum(e.data(), s2.data(), e.size() < s2.size() ? e.size()
                                                                                 : s2.size());
}

}  // namespace voltlab::kernels
