#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "voltlab/series.hpp"

namespace voltlab {

enum class VolFamily { arch, garch, tgarch };

std::string to_string(VolFamily f);
VolFamily parse_vol_family(std::string_view s);

/// Conditional mean r_t = c + sum_k phi_k r_{t-k} + eps_t and conditional
/// variance
///   s2_t = a0 + sum_i (a_i + g_i N_{t-i}) eps_{t-i}^2 + sum_j b_j s2_{t-j},
/// with N = 1 when the lagged shock is strictly negative (TGARCH only).
struct VolModelSpec {
    VolFamily family = VolFamily::garch;
    std::size_t p = 1;  ///< ARCH order
    std::size_t q = 1;  ///< GARCH order (0 for ARCH)
    std::vector<std::size_t> mean_lags;  ///< sparse AR lags, e.g. {4}
    bool include_mean_constant = true;
    bool constrained = true;

    static VolModelSpec garch(std::size_t p = 1, std::size_t q = 1) {
        return {VolFamily::garch, p, q, {}, true, true};
    }
    static VolModelSpec tgarch(std::size_t p = 1, std::size_t q = 1) {
        return {VolFamily::tgarch, p, q, {}, true, true};
    }
    static VolModelSpec arch(std::size_t p = 1) { return {VolFamily::arch, p, 0, {}, true, true}; }

    /// Validates and normalises: ARCH forces q = 0; mean lags sorted, unique.
    VolModelSpec normalized() const;
    std::size_t max_mean_lag() const;
    /// Observations skipped by the likelihood: max(mean lags, p, q).
    std::size_t burn() const;
    bool has_gamma() const { return family == VolFamily::tgarch; }
};

/// Model parameters in natural units.
struct VolParams {
    double mean_const = 0.0;
    std::vector<double> ar;  ///< aligned with spec.mean_lags
    double alpha0 = 0.0;
    std::vector<double> alpha;
    std::vector<double> gamma;  ///< empty or zeros unless TGARCH
    std::vector<double> beta;

    /// sum alpha + sum beta + 0.5 sum gamma
    double persistence() const;

    /// Flat vector in the order mean_const?, ar..., alpha0, alpha..., gamma...
    /// (TGARCH only), beta...
    std::vector<double> pack(const VolModelSpec& spec) const;
    static VolParams unpack(const VolModelSpec& spec, std::span<const double> theta);
    /// Names matching pack(): mean_const, ar[k], alpha0, alpha[i], gamma[i], beta[j].
    static std::vector<std::string> names(const VolModelSpec& spec);
};

/// Variance recursion over a residual path. Pre-sample eps^2 and s2 are set
/// to `sigma0_sq`. Returns s2_t for every t of `residuals`. Throws on a
/// non-finite value, naming the first bad index.
std::vector<double> variance_recursion(const VolModelSpec& spec, const VolParams& params,
                                       std::span<const double> residuals, double sigma0_sq);

/// eps_t = r_t - c - sum phi_k r_{t-k} for t >= max mean lag.
std::vector<double> mean_residuals(const VolModelSpec& spec, const VolParams& params,
                                   std::span<const double> returns);

/// Default pre-sample variance: mean squared deviation of the returns.
double presample_variance(std::span<const double> returns);

/// Gaussian log-likelihood. Returns -inf when some s2_t <= 0 (possible only
/// for unconstrained parameters). `sigma0_sq` defaults to presample_variance.
double log_likelihood(const VolModelSpec& spec, const VolParams& params,
                      std::span<const double> returns, std::optional<double> sigma0_sq = {});

struct FitOptions {
    double gradient_tol = 1e-5;
    int max_iter = 400;
};

struct VolModelFit {
    VolModelSpec spec;
    VolParams params;
    std::vector<std::string> param_names;
    std::vector<double> estimates;  ///< pack(spec) of params
    std::vector<double> std_errors;  ///< NaN where the information matrix is singular
    std::vector<double> p_values;
    double log_likelihood = 0.0;
    double sigma0_sq = 0.0;
    std::size_t n_obs = 0;  ///< returns supplied
    std::size_t n_effective = 0;  ///< terms in the likelihood sum
    std::vector<double> variance_path;  ///< aligned with residual_path
    std::vector<double> residual_path;  ///< starts at index max_mean_lag of the returns
    double persistence = 0.0;
    bool converged = false;
    int iterations = 0;
    double gradient_norm = 0.0;  ///< of -logL in natural parameters
    std::vector<std::string> warnings;
};

/// Gaussian maximum likelihood. Constrained fits optimise over
/// a0 = exp(u), a_i/g_i/b_j = softplus(u) with a smooth penalty once the
/// persistence exceeds 0.999; unconstrained fits optimise raw parameters.
VolModelFit fit(const VolModelSpec& spec, std::span<const double> returns,
                const FitOptions& options = {});

/// Standardised residuals eps_t / sqrt(s2_t) of a fit.
std::vector<double> standardized_residuals(const VolModelFit& f);

struct ArchLmResult {
    std::size_t lags = 0;
    std::size_t n_obs = 0;
    double f_stat = 0.0;
    double f_pvalue = 1.0;
    double lm_stat = 0.0;
    double lm_pvalue = 1.0;
};

/// Regression of eps_t^2 on a constant and its first `lags` lags.
ArchLmResult arch_lm_test(std::span<const double> residuals, std::size_t lags);

struct NewsImpactPoint {
    double epsilon;
    double sigma2;
};

/// s2 as a function of the lagged shock, other lags held at the
/// unconditional variance (or the mean fitted variance if nonstationary).
std::vector<NewsImpactPoint> news_impact_curve(const VolModelSpec& spec, const VolParams& params,
                                               std::span<const double> epsilon_grid,
                                               std::optional<double> reference_variance = {});
std::vector<NewsImpactPoint> news_impact_curve(const VolModelFit& f,
                                               std::span<const double> epsilon_grid);

/// Evenly spaced grid over [-half_width, half_width].
std::vector<double> symmetric_grid(double half_width, std::size_t points);

/// Simulates returns with standard normal innovations. Pre-sample variance
/// is the unconditional variance. Throws when persistence >= 1 or a
/// parameter violates the constraints.
std::vector<double> simulate(const VolModelSpec& spec, const VolParams& params, std::size_t length,
                             std::size_t burn_in, std::uint64_t seed);

/// simulate() dated on consecutive business days from `start`.
ReturnSeries simulate_series(const VolModelSpec& spec, const VolParams& params, std::size_t length,
                             std::size_t burn_in, std::uint64_t seed, Date start,
                             std::string label = "simulated");

std::string variance_path_csv(const VolModelFit& f, std::span<const Date> return_dates);
std::string news_impact_csv(const std::vector<NewsImpactPoint>& curve);

}  // namespace voltlab
