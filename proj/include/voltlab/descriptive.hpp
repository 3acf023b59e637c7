#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace voltlab {

/// Moment summary of a return series (values in percent).
struct SummaryStats {
    std::size_t n_obs = 0;
    double mean = 0.0;
    double std_dev = 0.0;  ///< denominator n - 1
    double min = 0.0;
    double max = 0.0;
    /// Undefined (empty) for a constant series.
    std::optional<double> skewness;
    std::optional<double> kurtosis_raw;
    std::optional<double> kurtosis_excess;
    /// Mean of the log returns; equals `mean` for percent log returns.
    double geo_mean_rate = 0.0;

    bool degenerate() const { return !skewness.has_value(); }
};

/// Throws when fewer than two observations are supplied.
SummaryStats summary(std::span<const double> r);

/// Sample autocorrelations r_0..r_max_lag (r_0 = 1).
std::vector<double> acf(std::span<const double> x, std::size_t max_lag);
/// Partial autocorrelations for lags 1..max_lag (index 0 is lag 1),
/// by Durbin-Levinson on the sample autocorrelations.
std::vector<double> pacf(std::span<const double> x, std::size_t max_lag);

struct CorrelogramRow {
    std::size_t lag = 0;
    double ac = 0.0;
    double pac = 0.0;
    double q_stat = 0.0;
    double q_pvalue = 1.0;
};

/// Ljung-Box Q(k) = n(n+2) sum_{j<=k} r_j^2/(n-j), p-values from chi2(k).
std::vector<CorrelogramRow> ljung_box(std::span<const double> x, std::size_t max_lag);

/// Distribution summary of the AC and PAC coefficient vectors over lags
/// 1..K (kurtosis reported as excess).
struct CoefficientSummary {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;
    std::optional<double> skewness;
    std::optional<double> kurtosis_excess;
};

struct CorrelogramSummary {
    CoefficientSummary ac;
    CoefficientSummary pac;
    std::size_t max_lag = 0;
    double q_stat = 0.0;  ///< Q at max_lag
    double q_pvalue = 1.0;
    double chi2_crit_5pct = 0.0;  ///< upper 5% point of chi2(max_lag - 1)
};

CorrelogramSummary summarize_correlogram(const std::vector<CorrelogramRow>& rows);

struct HistogramData {
    std::vector<double> bin_edges;  ///< n_bins + 1 ascending edges
    std::vector<std::size_t> counts;
};

/// Equal-width bins over [min, max]; the last bin is closed on both sides.
HistogramData histogram(std::span<const double> x, std::size_t n_bins);
/// Bins of the given width anchored at min(x).
HistogramData histogram_by_width(std::span<const double> x, double bin_width);

std::string histogram_csv(const HistogramData& h);
std::string correlogram_csv(const std::vector<CorrelogramRow>& rows);

}  // namespace voltlab
