#include "voltlab/cointegration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <fmt/format.h>

#include "voltlab/error.hpp"

namespace voltlab {

namespace {

// 5% points, index k - r - 1.
// Restricted constant: MacKinnon, Haug and Michelis (1999), the values
// EViews prints for "intercept (no trend) in CE".
constexpr std::array<double, 4> kTrace5Restricted = {9.164546, 20.26184, 35.19275, 54.07904};
constexpr std::array<double, 4> kMaxEig5Restricted = {9.164546, 15.89210, 22.29962, 28.58808};
// Unrestricted constant: Osterwald-Lenum (1992) as tabulated in statsmodels
// (c_sjt / c_sja with det_order 0).
constexpr std::array<double, 4> kTrace5Unrestricted = {3.8415, 15.4943, 29.7961, 47.8545};
constexpr std::array<double, 4> kMaxEig5Unrestricted = {3.8415, 14.2639, 21.1314, 27.5858};

double crit_lookup(const std::array<double, 4>& table, std::size_t k_minus_r) {
    if (k_minus_r < 1 || k_minus_r > table.size()) {
        throw Error(fmt::format("no Johansen critical value for k - r = {}", k_minus_r));
    }
    return table[k_minus_r - 1];
}

Matrix residualize(const Matrix& y, const Matrix& w) {
    if (w.cols() == 0) return y;
    Eigen::ColPivHouseholderQR<Matrix> qr(w);
    return y - w * qr.solve(y);
}

}  // namespace

std::string to_string(JohansenDeterministic d) {
    return d == JohansenDeterministic::restricted_constant ? "restricted constant" : "unrestricted constant";
}

double johansen_trace_crit_5pct(std::size_t k_minus_r, JohansenDeterministic d) {
    return crit_lookup(d == JohansenDeterministic::restricted_constant ? kTrace5Restricted : kTrace5Unrestricted,
                       k_minus_r);
}

double johansen_max_eig_crit_5pct(std::size_t k_minus_r, JohansenDeterministic d) {
    return crit_lookup(d == JohansenDeterministic::restricted_constant ? kMaxEig5Restricted : kMaxEig5Unrestricted,
                       k_minus_r);
}

EgResult engle_granger(std::span<const double> y, std::span<const double> x) {
    if (y.size() != x.size()) {
        throw Error(fmt::format("engle_granger: lengths differ ({} vs {})", y.size(), x.size()));
    }
    const std::size_t n = y.size();
    if (n < 30) throw Error(fmt::format("engle_granger: need at least 30 observations, got {}", n));
    Matrix design(static_cast<Eigen::Index>(n), 2);
    for (std::size_t t = 0; t < n; ++t) {
        design(static_cast<Eigen::Index>(t), 0) = 1.0;
        design(static_cast<Eigen::Index>(t), 1) = x[t];
    }
    const std::array<std::string, 2> names = {"const", "x"};
    EgResult res;
    res.static_fit = ols(design, y, names);

    const auto& u = res.static_fit.residuals;
    double scale = 0.0;
    double umax = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        scale = std::max(scale, std::abs(y[t]));
        umax = std::max(umax, std::abs(u[t]));
    }
    const auto critical = CriticalCase::eg_residual(2);
    AdfSpec spec;
    spec.deterministic = Deterministic::none;
    if (umax <= 1e-12 * std::max(scale, 1.0)) {
        res.degenerate = true;
        res.residual_adf.deterministic = Deterministic::none;
        res.residual_adf.n_obs = n - 1;
        res.residual_adf.statistic = -std::numeric_limits<double>::infinity();
        res.residual_adf.critical_values = adf_critical_values(critical, n - 1);
        res.residual_adf.p_value = adf_p_value(res.residual_adf.statistic, critical);
        res.residual_adf.stationary_at_5pct = true;
    } else {
        res.residual_adf = adf_test(u, spec, critical);
    }
    res.cointegrated_at_5pct = res.residual_adf.statistic < res.residual_adf.critical_values.pct5;
    return res;
}

EgResult engle_granger(const LogSeries& y, const LogSeries& x) {
    if (y.size() != x.size() || !std::equal(y.dates().begin(), y.dates().end(), x.dates().begin())) {
        throw Error("engle_granger: series are not aligned on identical dates");
    }
    return engle_granger(y.values(), x.values());
}

JohansenResult johansen(const Matrix& z, std::size_t var_lags, JohansenDeterministic deterministic) {
    const auto k = static_cast<std::size_t>(z.cols());
    if (k < 2 || k > 4) throw Error(fmt::format("johansen: need 2 to 4 variables, got {}", k));
    const auto total = static_cast<std::size_t>(z.rows());
    if (total < var_lags + 2) throw Error("johansen: series too short");
    const std::size_t t_eff = total - 1 - var_lags;
    if (t_eff <= 10 * k * std::max<std::size_t>(var_lags, 1)) {
        throw Error(fmt::format("johansen: {} observations are too few for {} variables and {} lags",
                                t_eff, k, var_lags));
    }
    if (!z.allFinite()) throw Error("johansen: non-finite input");

    const bool restricted = deterministic == JohansenDeterministic::restricted_constant;
    const auto kk = static_cast<Eigen::Index>(k);
    const auto rows = static_cast<Eigen::Index>(t_eff);
    // Restricted: the constant joins the lagged levels. Unrestricted: it is
    // partialled out with the short-run terms.
    const Eigen::Index c0 = restricted ? 0 : 1;
    Matrix dz0(rows, kk);
    Matrix z1(rows, restricted ? kk + 1 : kk);
    Matrix w(rows, c0 + kk * static_cast<Eigen::Index>(var_lags));
    for (std::size_t r = 0; r < t_eff; ++r) {
        const auto t = static_cast<Eigen::Index>(r + 1 + var_lags);
        const auto rr = static_cast<Eigen::Index>(r);
        dz0.row(rr) = z.row(t) - z.row(t - 1);
        z1.block(rr, 0, 1, kk) = z.row(t - 1);
        if (restricted) z1(rr, kk) = 1.0;
        else w(rr, 0) = 1.0;
        for (std::size_t j = 1; j <= var_lags; ++j) {
            const auto lag = static_cast<Eigen::Index>(j);
            w.block(rr, c0 + kk * (lag - 1), 1, kk) = z.row(t - lag) - z.row(t - lag - 1);
        }
    }
    const Matrix r0 = residualize(dz0, w);
    const Matrix r1 = residualize(z1, w);
    const double tt = static_cast<double>(t_eff);
    const Matrix s00 = r0.transpose() * r0 / tt;
    const Matrix s01 = r0.transpose() * r1 / tt;
    const Matrix s11 = r1.transpose() * r1 / tt;

    Eigen::LLT<Matrix> llt00(s00);
    if (llt00.info() != Eigen::Success) throw Error("johansen: S00 is singular");
    Eigen::LLT<Matrix> llt11(s11);
    if (llt11.info() != Eigen::Success) throw Error("johansen: S11 is singular");
    const Matrix a = s01.transpose() * llt00.solve(s01);
    const auto eig = gen_eigen_sym(a, s11);

    JohansenResult res;
    res.deterministic = deterministic;
    res.n_vars = k;
    res.var_lags = var_lags;
    res.n_obs = t_eff;
    // With the restricted constant there are k + 1 roots, the smallest zero.
    for (std::size_t i = 0; i < k; ++i) {
        const double v = eig.values[i];
        const double c = std::max(v, 0.0);
        if (!(c < 1.0)) throw Error("johansen: eigenvalue at or above one; moment matrices are degenerate");
        res.eigenvalues.push_back(c);
    }
    res.trace_stats.assign(k, 0.0);
    res.max_eig_stats.assign(k, 0.0);
    for (std::size_t r = 0; r < k; ++r) {
        double s = 0.0;
        for (std::size_t i = r; i < k; ++i) s += std::log1p(-res.eigenvalues[i]);
        res.trace_stats[r] = -tt * s;
        res.max_eig_stats[r] = -tt * std::log1p(-res.eigenvalues[r]);
        res.trace_crit_5pct.push_back(johansen_trace_crit_5pct(k - r, deterministic));
        res.max_eig_crit_5pct.push_back(johansen_max_eig_crit_5pct(k - r, deterministic));
    }
    res.selected_rank = k;
    for (std::size_t r = 0; r < k; ++r) {
        if (res.trace_stats[r] < res.trace_crit_5pct[r]) {
            res.selected_rank = r;
            break;
        }
    }
    return res;
}

std::size_t EcmFit::index_of(std::string_view term) const {
    for (std::size_t i = 0; i < included_terms.size(); ++i) {
        if (included_terms[i] == term) return i;
    }
    throw Error(fmt::format("ECM has no term '{}'", term));
}

EcmFit fit_ecm(std::span<const double> y, std::span<const double> x,
               std::span<const double> residuals, EcmTerms terms) {
    if (y.size() != x.size() || y.size() != residuals.size()) {
        throw Error("fit_ecm: y, x and residuals must have equal lengths");
    }
    const std::size_t first = terms.lagged_dy ? 2 : 1;
    const std::size_t n = y.size();
    if (n < first + 10) throw Error("fit_ecm: series too short");
    const std::size_t rows = n - first;

    EcmFit out;
    out.terms = terms;
    if (terms.constant) out.included_terms.emplace_back("a0");
    out.included_terms.emplace_back("u(-1)");
    if (terms.lagged_dy) out.included_terms.emplace_back("dy(-1)");
    out.included_terms.emplace_back("dx");

    Matrix design(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(out.included_terms.size()));
    std::vector<double> dy(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = r + first;
        const auto rr = static_cast<Eigen::Index>(r);
        dy[r] = y[t] - y[t - 1];
        Eigen::Index c = 0;
        if (terms.constant) design(rr, c++) = 1.0;
        design(rr, c++) = residuals[t - 1];
        if (terms.lagged_dy) design(rr, c++) = y[t - 1] - y[t - 2];
        design(rr, c++) = x[t] - x[t - 1];
    }
    out.fit = ols(design, dy, out.included_terms);
    out.adjustment_coef = out.fit.coefficients[out.index_of("u(-1)")];
    out.pi = -out.adjustment_coef;
    out.b1 = out.fit.coefficients[out.index_of("dx")];
    if (terms.constant) out.a0 = out.fit.coefficients[out.index_of("a0")];
    if (terms.lagged_dy) out.lagged_dy_coef = out.fit.coefficients[out.index_of("dy(-1)")];
    return out;
}

EcmFit fit_ecm_pruned(std::span<const double> y, std::span<const double> x,
                      std::span<const double> residuals) {
    const auto full = fit_ecm(y, x, residuals, {true, true});
    auto significant = [&](std::string_view term) {
        const double t = full.fit.t_stats[full.index_of(term)];
        return std::isfinite(t) && std::abs(t) >= 1.96;
    };
    return fit_ecm(y, x, residuals, {significant("a0"), significant("dy(-1)")});
}

}  // namespace voltlab
