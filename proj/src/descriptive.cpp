#include "voltlab/descriptive.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "voltlab/error.hpp"
#include "voltlab/kernels.hpp"
#include "voltlab/numerics.hpp"

namespace voltlab {

namespace {

bool zero_variance(double sum_sq_dev, std::span<const double> x) {
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    const double tol = 1e-14 * std::max(scale, 1e-300);
    return sum_sq_dev <= tol * tol * static_cast<double>(x.size());
}

CoefficientSummary coefficient_summary(const std::vector<double>& v) {
    CoefficientSummary s;
    if (v.empty()) return s;
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    s.min = *lo;
    s.max = *hi;
    if (v.size() < 2) {
        s.mean = v.front();
        return s;
    }
    auto st = summary(v);
    s.mean = st.mean;
    s.std_dev = st.std_dev;
    s.skewness = st.skewness;
    s.kurtosis_excess = st.kurtosis_excess;
    return s;
}

}  // namespace

SummaryStats summary(std::span<const double> r) {
    if (r.size() < 2) throw Error("summary needs at least two observations");
    SummaryStats s;
    const auto n = static_cast<double>(r.size());
    s.n_obs = r.size();
    s.mean = kernels::sum(r) / n;
    auto [lo, hi] = std::minmax_element(r.begin(), r.end());
    s.min = *lo;
    s.max = *hi;
    const auto m = kernels::central_moments(r, s.mean);
    s.std_dev = std::sqrt(m.m2 / (n - 1.0));
    s.geo_mean_rate = s.mean;
    if (!zero_variance(m.m2, r)) {
        const double m2 = m.m2 / n;
        const double m3 = m.m3 / n;
        const double m4 = m.m4 / n;
        s.skewness = m3 / std::pow(m2, 1.5);
        s.kurtosis_raw = m4 / (m2 * m2);
        s.kurtosis_excess = *s.kurtosis_raw - 3.0;
    } else {
        s.std_dev = 0.0;
    }
    return s;
}

std::vector<double> acf(std::span<const double> x, std::size_t max_lag) {
    if (x.empty() || 2 * max_lag >= x.size()) {
        throw Error(fmt::format("acf: max_lag {} must be below n/2 (n = {})", max_lag, x.size()));
    }
    const double mean = kernels::sum(x) / static_cast<double>(x.size());
    const double denom = kernels::sum_sq_dev(x, mean);
    if (zero_variance(denom, x)) throw Error("acf: series has zero variance");
    std::vector<double> r(max_lag + 1);
    r[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) r[k] = kernels::lagged_cross(x, k, mean) / denom;
    return r;
}

std::vector<double> pacf(std::span<const double> x, std::size_t max_lag) {
    const auto r = acf(x, max_lag);
    std::vector<double> out;
    out.reserve(max_lag);
    // Durbin-Levinson: phi[k][k] is the lag-k partial autocorrelation.
    std::vector<double> phi;
    std::vector<double> prev;
    double v = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double num = r[k];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j - 1] * r[k - j];
        const double pkk = v > 0.0 ? num / v : 0.0;
        phi.assign(k, 0.0);
        for (std::size_t j = 1; j < k; ++j) phi[j - 1] = prev[j - 1] - pkk * prev[k - j - 1];
        phi[k - 1] = pkk;
        v *= (1.0 - pkk * pkk);
        out.push_back(pkk);
        prev = phi;
    }
    return out;
}

std::vector<CorrelogramRow> ljung_box(std::span<const double> x, std::size_t max_lag) {
    if (max_lag == 0 || 4 * max_lag >= x.size()) {
        throw Error(fmt::format("ljung_box: max_lag {} must be positive and below n/4 (n = {})",
                                max_lag, x.size()));
    }
    const auto r = acf(x, max_lag);
    const auto p = pacf(x, max_lag);
    const auto n = static_cast<double>(x.size());
    std::vector<CorrelogramRow> rows;
    rows.reserve(max_lag);
    double acc = 0.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        acc += r[k] * r[k] / (n - static_cast<double>(k));
        CorrelogramRow row;
        row.lag = k;
        row.ac = r[k];
        row.pac = p[k - 1];
        row.q_stat = n * (n + 2.0) * acc;
        row.q_pvalue = dist_sf(Distribution::chi2(static_cast<double>(k)), row.q_stat);
        rows.push_back(row);
    }
    return rows;
}

CorrelogramSummary summarize_correlogram(const std::vector<CorrelogramRow>& rows) {
    if (rows.empty()) throw Error("summarize_correlogram: no rows");
    std::vector<double> ac;
    std::vector<double> pac;
    for (const auto& r : rows) {
        ac.push_back(r.ac);
        pac.push_back(r.pac);
    }
    CorrelogramSummary s;
    s.ac = coefficient_summary(ac);
    s.pac = coefficient_summary(pac);
    s.max_lag = rows.back().lag;
    s.q_stat = rows.back().q_stat;
    s.q_pvalue = rows.back().q_pvalue;
    const double df = s.max_lag > 1 ? static_cast<double>(s.max_lag - 1) : 1.0;
    s.chi2_crit_5pct = dist_quantile(Distribution::chi2(df), 0.95);
    return s;
}

namespace {

HistogramData bin_counts(std::span<const double> x, double lo, double width, std::size_t n_bins,
                         double last_edge) {
    HistogramData h;
    h.bin_edges.resize(n_bins + 1);
    for (std::size_t i = 0; i <= n_bins; ++i) h.bin_edges[i] = lo + width * static_cast<double>(i);
    h.bin_edges.back() = last_edge;
    h.counts.assign(n_bins, 0);
    for (double v : x) {
        auto idx = static_cast<std::size_t>(std::floor((v - lo) / width));
        if (idx >= n_bins) idx = n_bins - 1;
        // Rounding can place a value one bin too far right.
        while (idx > 0 && v < h.bin_edges[idx]) --idx;
        ++h.counts[idx];
    }
    return h;
}

}  // namespace

HistogramData histogram(std::span<const double> x, std::size_t n_bins) {
    if (n_bins < 1) throw Error("histogram: n_bins must be at least 1");
    if (x.empty()) throw Error("histogram: empty input");
    auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) return HistogramData{{lo - 0.5, hi + 0.5}, {x.size()}};
    return bin_counts(x, lo, (hi - lo) / static_cast<double>(n_bins), n_bins, hi);
}

HistogramData histogram_by_width(std::span<const double> x, double bin_width) {
    if (!(bin_width > 0.0)) throw Error("histogram: bin_width must be positive");
    if (x.empty()) throw Error("histogram: empty input");
    auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) return HistogramData{{lo - 0.5, hi + 0.5}, {x.size()}};
    const auto bins = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil((hi - lo) / bin_width)));
    const double last = lo + bin_width * static_cast<double>(bins);
    return bin_counts(x, lo, bin_width, bins, std::max(last, hi));
}

std::string histogram_csv(const HistogramData& h) {
    std::string out = "bin_edge_lo,bin_edge_hi,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        out += fmt::format("{:.10g},{:.10g},{}\n", h.bin_edges[i], h.bin_edges[i + 1], h.counts[i]);
    }
    return out;
}

std::string correlogram_csv(const std::vector<CorrelogramRow>& rows) {
    std::string out = "lag,ac,pac,q,p\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{:.10g},{:.10g},{:.10g},{:.10g}\n", r.lag, r.ac, r.pac, r.q_stat,
                           r.q_pvalue);
    }
    return out;
}

}  // namespace voltlab
