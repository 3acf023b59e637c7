#include "voltlab/serialize.hpp"

#include <cmath>
#include <limits>

namespace voltlab {

namespace {

Json numbers(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(json_number(x));
    return a;
}

Json optional_number(const std::optional<double>& v) {
    return v ? json_number(*v) : Json(nullptr);
}

// Coefficient table rows {name, coef, se, t, p}; p from the normal or t
// reference is left to the caller.
Json coefficient_rows(const OlsFit& f, const std::vector<std::string>& names) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < f.coefficients.size(); ++i) {
        const double df = static_cast<double>(f.n_obs) - static_cast<double>(f.n_params);
        double p = std::numeric_limits<double>::quiet_NaN();
        if (std::isfinite(f.t_stats[i]) && df > 0.0) {
            // Two-sided t p-value via F(1, df) = t^2.
            p = dist_sf(Distribution::f_dist(1.0, df), f.t_stats[i] * f.t_stats[i]);
        }
        rows.push_back({{"name", i < names.size() ? names[i] : "x" + std::to_string(i)},
                        {"coef", json_number(f.coefficients[i])},
                        {"std_error", json_number(f.std_errors[i])},
                        {"t_stat", json_number(f.t_stats[i])},
                        {"p_value", json_number(p)}});
    }
    return rows;
}

}  // namespace

Json json_number(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double number_from_json(const Json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw Error("expected a number, got string '" + s + "'");
    }
    return j.get<double>();
}

void to_json(Json& j, const SummaryStats& s) {
    j = {{"n_obs", s.n_obs},
         {"mean", json_number(s.mean)},
         {"std_dev", json_number(s.std_dev)},
         {"min", json_number(s.min)},
         {"max", json_number(s.max)},
         {"skewness", optional_number(s.skewness)},
         {"kurtosis", optional_number(s.kurtosis_raw)},
         {"kurtosis_excess", optional_number(s.kurtosis_excess)},
         {"geo_mean_rate", json_number(s.geo_mean_rate)},
         {"degenerate", s.degenerate()}};
}

void to_json(Json& j, const CorrelogramRow& r) {
    j = {{"lag", r.lag},
         {"ac", json_number(r.ac)},
         {"pac", json_number(r.pac)},
         {"q_stat", json_number(r.q_stat)},
         {"q_pvalue", json_number(r.q_pvalue)}};
}

void to_json(Json& j, const CoefficientSummary& s) {
    j = {{"min", json_number(s.min)},
         {"max", json_number(s.max)},
         {"mean", json_number(s.mean)},
         {"std_dev", json_number(s.std_dev)},
         {"skewness", optional_number(s.skewness)},
         {"kurtosis_excess", optional_number(s.kurtosis_excess)}};
}

void to_json(Json& j, const CorrelogramSummary& s) {
    j = {{"ac", s.ac},
         {"pac", s.pac},
         {"max_lag", s.max_lag},
         {"q_stat", json_number(s.q_stat)},
         {"q_pvalue", json_number(s.q_pvalue)},
         {"chi2_df", s.max_lag > 0 ? s.max_lag - 1 : 0},
         {"chi2_crit_5pct", json_number(s.chi2_crit_5pct)}};
}

void to_json(Json& j, const OlsFit& f) {
    j = {{"coefficients", numbers(f.coefficients)},
         {"std_errors", numbers(f.std_errors)},
         {"t_stats", numbers(f.t_stats)},
         {"rss", json_number(f.rss)},
         {"r_squared", json_number(f.r_squared)},
         {"n_obs", f.n_obs},
         {"n_params", f.n_params}};
}

void to_json(Json& j, const CriticalValues& c) {
    j = {{"1%", json_number(c.pct1)}, {"5%", json_number(c.pct5)}, {"10%", json_number(c.pct10)}};
}

void to_json(Json& j, const AdfResult& r) {
    j = {{"statistic", json_number(r.statistic)},
         {"p_value", json_number(r.p_value)},
         {"lags", r.lags_used},
         {"n_obs", r.n_obs},
         {"deterministic", to_string(r.deterministic)},
         {"critical_values", r.critical_values},
         {"stationary_at_5pct", r.stationary_at_5pct}};
}

void to_json(Json& j, const ArchLmResult& r) {
    j = {{"lags", r.lags},
         {"n_obs", r.n_obs},
         {"f_stat", json_number(r.f_stat)},
         {"f_pvalue", json_number(r.f_pvalue)},
         {"lm_stat", json_number(r.lm_stat)},
         {"lm_pvalue", json_number(r.lm_pvalue)}};
}

void to_json(Json& j, const VolModelSpec& s) {
    j = {{"family", to_string(s.family)},
         {"p", s.p},
         {"q", s.q},
         {"mean_lags", s.mean_lags},
         {"mean_constant", s.include_mean_constant},
         {"constrained", s.constrained}};
}

void to_json(Json& j, const VolModelFit& f) {
    Json params = Json::array();
    for (std::size_t i = 0; i < f.estimates.size(); ++i) {
        params.push_back({{"name", f.param_names[i]},
                          {"estimate", json_number(f.estimates[i])},
                          {"std_error", json_number(f.std_errors[i])},
                          {"p_value", json_number(f.p_values[i])}});
    }
    j = {{"spec", f.spec},
         {"params", params},
         {"log_likelihood", json_number(f.log_likelihood)},
         {"persistence", json_number(f.persistence)},
         {"sigma0_sq", json_number(f.sigma0_sq)},
         {"n_obs", f.n_obs},
         {"n_effective", f.n_effective},
         {"converged", f.converged},
         {"iterations", f.iterations},
         {"gradient_norm", json_number(f.gradient_norm)},
         {"warnings", f.warnings}};
}

void to_json(Json& j, const EgResult& r) {
    j = {{"intercept", json_number(r.intercept())},
         {"slope", json_number(r.slope())},
         {"regression", coefficient_rows(r.static_fit, {"const", "x"})},
         {"r_squared", json_number(r.static_fit.r_squared)},
         {"n_obs", r.static_fit.n_obs},
         {"residual_adf", r.residual_adf},
         {"cointegrated_at_5pct", r.cointegrated_at_5pct},
         {"degenerate", r.degenerate}};
}

void to_json(Json& j, const JohansenResult& r) {
    Json ranks = Json::array();
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        ranks.push_back({{"rank", i},
                         {"eigenvalue", json_number(r.eigenvalues[i])},
                         {"trace", json_number(r.trace_stats[i])},
                         {"trace_crit_5pct", json_number(r.trace_crit_5pct[i])},
                         {"max_eig", json_number(r.max_eig_stats[i])},
                         {"max_eig_crit_5pct", json_number(r.max_eig_crit_5pct[i])}});
    }
    j = {{"n_vars", r.n_vars},
         {"var_lags", r.var_lags},
         {"n_obs", r.n_obs},
         {"deterministic", to_string(r.deterministic)},
         {"ranks", ranks},
         {"selected_rank", r.selected_rank}};
}

void to_json(Json& j, const EcmFit& f) {
    j = {{"terms", f.included_terms},
         {"coefficients", coefficient_rows(f.fit, f.included_terms)},
         {"adjustment_coef", json_number(f.adjustment_coef)},
         {"pi", json_number(f.pi)},
         {"b1", json_number(f.b1)},
         {"a0", optional_number(f.a0)},
         {"r_squared", json_number(f.fit.r_squared)},
         {"n_obs", f.fit.n_obs}};
}

void to_json(Json& j, const GrangerResult& r) {
    j = {{"lag", r.lag},
         {"f_x_to_y", json_number(r.f_x_to_y)},
         {"p_x_to_y", json_number(r.p_x_to_y)},
         {"f_y_to_x", json_number(r.f_y_to_x)},
         {"p_y_to_x", json_number(r.p_y_to_x)},
         {"n_effective", r.n_effective}};
}

}  // namespace voltlab
