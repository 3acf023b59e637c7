#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "voltlab/numerics.hpp"
#include "voltlab/series.hpp"
#include "voltlab/unitroot.hpp"

namespace voltlab {

/// Two-step Engle-Granger test: y_t = a + b x_t + u_t by OLS, then an ADF
/// regression without deterministic terms on u, judged against the
/// two-variable Engle-Granger residual distribution.
struct EgResult {
    OlsFit static_fit;  ///< coefficients {intercept, slope}
    AdfResult residual_adf;
    bool cointegrated_at_5pct = false;
    /// Residuals vanish (y is an exact affine function of x). The ADF
    /// statistic is reported as -inf.
    bool degenerate = false;

    double intercept() const { return static_fit.coefficients[0]; }
    double slope() const { return static_fit.coefficients[1]; }
    const std::vector<double>& residuals() const { return static_fit.residuals; }
};

EgResult engle_granger(std::span<const double> y, std::span<const double> x);
/// Throws when the two series are not on identical dates.
EgResult engle_granger(const LogSeries& y, const LogSeries& x);

/// Placement of the constant. Restricted: inside the cointegrating relation
/// only, no drift in the levels. Unrestricted: in the VAR, levels may drift.
enum class JohansenDeterministic { restricted_constant, unrestricted_constant };

std::string to_string(JohansenDeterministic d);

struct JohansenResult {
    JohansenDeterministic deterministic = JohansenDeterministic::restricted_constant;
    std::size_t n_vars = 0;
    std::size_t var_lags = 0;
    std::size_t n_obs = 0;  ///< T, rows of the reduced-rank regression
    std::vector<double> eigenvalues;  ///< descending, in [0, 1)
    std::vector<double> trace_stats;  ///< index r: H0 rank <= r
    std::vector<double> max_eig_stats;  ///< index r: H0 rank r vs r + 1
    std::vector<double> trace_crit_5pct;
    std::vector<double> max_eig_crit_5pct;
    std::size_t selected_rank = 0;
};

/// Johansen reduced-rank test. `z` holds the levels, one column per
/// variable (2 to 4 columns). `var_lags` lagged differences enter the
/// short-run part.
JohansenResult johansen(const Matrix& z, std::size_t var_lags = 2,
                        JohansenDeterministic deterministic = JohansenDeterministic::restricted_constant);

/// 5% critical values indexed by k - r (1 to 4).
double johansen_trace_crit_5pct(std::size_t k_minus_r,
                                JohansenDeterministic d = JohansenDeterministic::restricted_constant);
double johansen_max_eig_crit_5pct(std::size_t k_minus_r,
                                  JohansenDeterministic d = JohansenDeterministic::restricted_constant);

struct EcmTerms {
    bool constant = true;
    bool lagged_dy = true;
};

/// dy_t = [a0] + c u_{t-1} + [d dy_{t-1}] + b1 dx_t + e_t.
/// `adjustment_coef` is c; `pi` = -c follows the "- pi u_{t-1}" convention.
struct EcmFit {
    EcmTerms terms;
    std::vector<std::string> included_terms;  ///< names in coefficient order
    OlsFit fit;
    double adjustment_coef = 0.0;
    double pi = 0.0;
    double b1 = 0.0;
    std::optional<double> a0;
    std::optional<double> lagged_dy_coef;

    std::size_t index_of(std::string_view term) const;
};

/// `y`, `x` are log levels and `residuals` the equilibrium errors on the
/// same observations. Column order: a0, u(-1), dy(-1), dx.
EcmFit fit_ecm(std::span<const double> y, std::span<const double> x,
               std::span<const double> residuals, EcmTerms terms = {});

/// Fits the full model, then refits without the constant and the lagged
/// dependent difference when their |t| < 1.96.
EcmFit fit_ecm_pruned(std::span<const double> y, std::span<const double> x,
                      std::span<const double> residuals);

}  // namespace voltlab
