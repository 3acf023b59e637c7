#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace voltlab {

enum class Deterministic { none, constant, constant_trend };
enum class InfoCriterion { aic, bic };

std::string to_string(Deterministic d);
std::string to_string(InfoCriterion c);

struct AdfSpec {
    Deterministic deterministic = Deterministic::constant_trend;
    /// When false, `lag_order` augmentation lags are used as given.
    bool auto_lag = true;
    std::size_t lag_order = 0;
    /// Upper bound for automatic selection; defaults to floor(12 (n/100)^0.25).
    std::optional<std::size_t> max_lag;
    InfoCriterion criterion = InfoCriterion::bic;
};

/// Which Dickey-Fuller distribution to take critical values from: the plain
/// ADF case for a deterministic specification, or the Engle-Granger
/// residual case for a cointegrating regression (with constant) on
/// `n_vars` variables.
struct CriticalCase {
    Deterministic deterministic = Deterministic::constant_trend;
    std::size_t n_vars = 1;

    static CriticalCase adf(Deterministic d) { return {d, 1}; }
    static CriticalCase eg_residual(std::size_t n_vars) { return {Deterministic::constant, n_vars}; }
};

struct CriticalValues {
    double pct1 = 0.0;
    double pct5 = 0.0;
    double pct10 = 0.0;
};

struct AdfResult {
    double statistic = 0.0;
    std::size_t lags_used = 0;
    std::size_t n_obs = 0;  ///< observations in the test regression
    Deterministic deterministic = Deterministic::constant_trend;
    CriticalValues critical_values;
    double p_value = 1.0;
    bool stationary_at_5pct = false;
};

/// Finite-sample critical values from MacKinnon's response surfaces.
/// Throws for n < 20 or an unsupported number of variables.
CriticalValues adf_critical_values(CriticalCase c, std::size_t n);

/// Approximate asymptotic p-value for a Dickey-Fuller t-ratio, clamped to
/// [0.0001, 0.9999].
double adf_p_value(double statistic, CriticalCase c);

/// ADF regression of the first difference on the deterministic terms, the
/// lagged level and `p` lagged differences; the statistic is the t-ratio on
/// the lagged level.
AdfResult adf_test(std::span<const double> x, const AdfSpec& spec = {});

/// As adf_test, but compares against the critical values of `critical`.
AdfResult adf_test(std::span<const double> x, const AdfSpec& spec, CriticalCase critical);

/// Lag in 0..max_lag minimising the criterion over a common estimation sample.
std::size_t select_lag(std::span<const double> x, std::size_t max_lag,
                       InfoCriterion criterion = InfoCriterion::bic,
                       Deterministic deterministic = Deterministic::constant_trend);

std::size_t schwert_max_lag(std::size_t n);

}  // namespace voltlab
