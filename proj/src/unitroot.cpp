#include "voltlab/unitroot.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "voltlab/error.hpp"
#include "voltlab/numerics.hpp"

namespace voltlab {

std::string to_string(Deterministic d) {
    switch (d) {
    case Deterministic::none:
        return "none";
    case Deterministic::constant:
        return "constant";
    case Deterministic::constant_trend:
        return "constant+trend";
    }
    return "?";
}

std::string to_string(InfoCriterion c) { return c == InfoCriterion::aic ? "AIC" : "BIC"; }

std::size_t schwert_max_lag(std::size_t n) {
    return static_cast<std::size_t>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

namespace {

std::size_t n_deterministic(Deterministic d) {
    switch (d) {
    case Deterministic::none:
        return 0;
    case Deterministic::constant:
        return 1;
    case Deterministic::constant_trend:
        return 2;
    }
    return 0;
}

void check_variation(std::span<const double> x) {
    if (x.empty()) throw Error("adf: empty series");
    double lo = x[0];
    double hi = x[0];
    for (double v : x) {
        if (!std::isfinite(v)) throw Error("adf: series contains non-finite values");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) throw Error("adf: series is constant");
}

struct AdfRegression {
    Matrix design;
    std::vector<double> response;
    std::size_t level_col = 0;
};

/// Rows use first-difference indices t = first..n-2, where dx[t] = x[t+1] - x[t].
AdfRegression build_regression(std::span<const double> x, std::size_t lags, std::size_t first,
                               Deterministic det) {
    const std::size_t n_dx = x.size() - 1;
    const std::size_t rows = n_dx - first;
    const std::size_t ndet = n_deterministic(det);
    const std::size_t cols = ndet + 1 + lags;
    AdfRegression reg;
    reg.design.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    reg.response.resize(rows);
    reg.level_col = ndet;
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = first + r;
        const auto rr = static_cast<Eigen::Index>(r);
        reg.response[r] = x[t + 1] - x[t];
        Eigen::Index c = 0;
        if (ndet >= 1) reg.design(rr, c++) = 1.0;
        if (ndet >= 2) reg.design(rr, c++) = static_cast<double>(t + 1);
        reg.design(rr, c++) = x[t];
        for (std::size_t j = 1; j <= lags; ++j) reg.design(rr, c++) = x[t + 1 - j] - x[t - j];
    }
    return reg;
}

}  // namespace

std::size_t select_lag(std::span<const double> x, std::size_t max_lag, InfoCriterion criterion,
                       Deterministic deterministic) {
    check_variation(x);
    if (max_lag == 0) return 0;
    if (3 * max_lag >= x.size()) {
        throw Error(fmt::format("select_lag: max_lag {} must be below n/3 (n = {})", max_lag, x.size()));
    }
    if (x.size() < 20 + max_lag) {
        throw Error(fmt::format("select_lag: series of length {} too short for {} lags", x.size(), max_lag));
    }
    std::size_t best = 0;
    double best_ic = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p <= max_lag; ++p) {
        auto reg = build_regression(x, p, max_lag, deterministic);
        const auto fit = ols(reg.design, reg.response);
        const auto nobs = static_cast<double>(fit.n_obs);
        const auto k = static_cast<double>(fit.n_params);
        const double penalty = criterion == InfoCriterion::aic ? 2.0 * k : k * std::log(nobs);
        const double ic = nobs * std::log(fit.rss / nobs) + penalty;
        if (ic < best_ic) {
            best_ic = ic;
            best = p;
        }
    }
    return best;
}

AdfResult adf_test(std::span<const double> x, const AdfSpec& spec) {
    return adf_test(x, spec, CriticalCase::adf(spec.deterministic));
}

AdfResult adf_test(std::span<const double> x, const AdfSpec& spec, CriticalCase critical) {
    check_variation(x);
    std::size_t lags = spec.lag_order;
    if (spec.auto_lag) {
        std::size_t max_lag = spec.max_lag.value_or(schwert_max_lag(x.size()));
        while (max_lag > 0 && (3 * max_lag >= x.size() || x.size() < 20 + max_lag)) --max_lag;
        lags = select_lag(x, max_lag, spec.criterion, spec.deterministic);
    }
    if (x.size() < 20 + lags) {
        throw Error(fmt::format("adf: series of length {} too short for {} lags", x.size(), lags));
    }
    auto reg = build_regression(x, lags, lags, spec.deterministic);
    const auto fit = ols(reg.design, reg.response);

    AdfResult res;
    res.deterministic = spec.deterministic;
    res.lags_used = lags;
    res.n_obs = fit.n_obs;
    const double se = fit.std_errors[reg.level_col];
    res.statistic = se > 0.0 ? fit.coefficients[reg.level_col] / se
                             : -std::numeric_limits<double>::infinity();
    res.critical_values = adf_critical_values(critical, res.n_obs);
    res.p_value = adf_p_value(res.statistic, critical);
    res.stationary_at_5pct = res.statistic < res.critical_values.pct5;
    return res;
}

}  // namespace voltlab
