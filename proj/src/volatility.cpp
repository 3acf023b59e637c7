#include "voltlab/volatility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Cholesky>
#include <fmt/format.h>

#include "voltlab/descriptive.hpp"
#include "voltlab/error.hpp"
#include "voltlab/kernels.hpp"
#include "voltlab/numerics.hpp"

namespace voltlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPersistenceCap = 0.999;
constexpr double kPenaltyScale = 1e3;

double softplus(double u) { return u > 30.0 ? u : std::log1p(std::exp(u)); }
double softplus_inv(double v) { return v > 30.0 ? v : std::log(std::expm1(v)); }

std::vector<double> zeros_if_empty(const std::vector<double>& v, std::size_t n) {
    return v.empty() ? std::vector<double>(n, 0.0) : v;
}

void check_dims(const VolModelSpec& spec, const VolParams& params) {
    if (params.ar.size() != spec.mean_lags.size() || params.alpha.size() != spec.p ||
        params.beta.size() != spec.q ||
        (spec.has_gamma() && params.gamma.size() != spec.p) ||
        (!spec.has_gamma() && !params.gamma.empty() && params.gamma.size() != spec.p)) {
        throw Error(fmt::format(
            "parameter dimensions do not match {}({},{}) with {} mean lags", to_string(spec.family),
            spec.p, spec.q, spec.mean_lags.size()));
    }
}

/// Variance recursion that reports failure instead of throwing. Returns the
/// first index with a non-positive or non-finite variance, or npos.
std::size_t recursion_into(const VolModelSpec& spec, const VolParams& params,
                           std::span<const double> eps, double sigma0_sq,
                           std::vector<double>& s2) {
    const std::size_t n = eps.size();
    s2.resize(n);
    const std::size_t p = spec.p;
    const std::size_t q = spec.q;
    const bool asym = spec.has_gamma() && !params.gamma.empty();
    const double a0 = params.alpha0;

    if (p == 1 && q <= 1) {
        const double a1 = params.alpha[0];
        const double g1 = asym ? params.gamma[0] : 0.0;
        const double b1 = q == 1 ? params.beta[0] : 0.0;
        double prev_e = 0.0;
        double prev_e2 = sigma0_sq;
        double prev_s2 = sigma0_sq;
        double prev_w = a1 + 0.5 * g1;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = a0 + prev_w * prev_e2 + b1 * prev_s2;
            if (!(v > 0.0) || !std::isfinite(v)) return t;
            s2[t] = v;
            prev_e = eps[t];
            prev_e2 = prev_e * prev_e;
            prev_w = asym ? (prev_e < 0.0 ? a1 + g1 : a1) : a1;
            prev_s2 = v;
        }
        return std::string::npos;
    }

    for (std::size_t t = 0; t < n; ++t) {
        double v = a0;
        for (std::size_t i = 1; i <= p; ++i) {
            const double a = params.alpha[i - 1];
            const double g = asym ? params.gamma[i - 1] : 0.0;
            if (t >= i) {
                const double e = eps[t - i];
                v += (e < 0.0 ? a + g : a) * e * e;
            } else {
                v += (a + 0.5 * g) * sigma0_sq;
            }
        }
        for (std::size_t j = 1; j <= q; ++j) {
            v += params.beta[j - 1] * (t >= j ? s2[t - j] : sigma0_sq);
        }
        if (!(v > 0.0) || !std::isfinite(v)) return t;
        s2[t] = v;
    }
    return std::string::npos;
}

/// Negative log-likelihood; +inf when the variance path is invalid.
double negative_loglik(const VolModelSpec& spec, const VolParams& params,
                       std::span<const double> returns, double sigma0_sq,
                       std::vector<double>& eps, std::vector<double>& s2) {
    const std::size_t m = spec.max_mean_lag();
    const std::size_t n = returns.size();
    eps.resize(n - m);
    for (std::size_t t = m; t < n; ++t) {
        double mu = params.mean_const;
        for (std::size_t k = 0; k < spec.mean_lags.size(); ++k) {
            mu += params.ar[k] * returns[t - spec.mean_lags[k]];
        }
        eps[t - m] = returns[t] - mu;
    }
    if (recursion_into(spec, params, eps, sigma0_sq, s2) != std::string::npos) return kInf;
    const std::size_t skip = spec.burn() - m;
    const std::size_t count = eps.size() - skip;
    double log_sum = 0.0;
    for (std::size_t t = skip; t < s2.size(); ++t) log_sum += std::log(s2[t]);
    const double ratio =
        kernels::sq_ratio_sum(std::span<const double>(eps).subspan(skip),
                              std::span<const double>(s2).subspan(skip));
    const double nll = 0.5 * (static_cast<double>(count) * std::log(2.0 * std::numbers::pi) +
                              log_sum + ratio);
    return std::isfinite(nll) ? nll : kInf;
}

struct Layout {
    std::size_t n_mean = 0;  // constant + ar
    std::size_t alpha0 = 0;
    std::size_t n_total = 0;
};

Layout layout(const VolModelSpec& spec) {
    Layout l;
    l.n_mean = (spec.include_mean_constant ? 1 : 0) + spec.mean_lags.size();
    l.alpha0 = l.n_mean;
    l.n_total = l.n_mean + 1 + spec.p * (spec.has_gamma() ? 2 : 1) + spec.q;
    return l;
}

/// Maps optimiser coordinates to natural parameters.
std::vector<double> to_natural(const VolModelSpec& spec, std::span<const double> u) {
    std::vector<double> theta(u.begin(), u.end());
    if (!spec.constrained) return theta;
    const auto l = layout(spec);
    theta[l.alpha0] = std::exp(u[l.alpha0]);
    for (std::size_t i = l.alpha0 + 1; i < l.n_total; ++i) theta[i] = softplus(u[i]);
    return theta;
}

std::vector<double> from_natural(const VolModelSpec& spec, std::span<const double> theta) {
    std::vector<double> u(theta.begin(), theta.end());
    if (!spec.constrained) return u;
    const auto l = layout(spec);
    u[l.alpha0] = std::log(std::max(theta[l.alpha0], 1e-300));
    for (std::size_t i = l.alpha0 + 1; i < l.n_total; ++i) {
        u[i] = softplus_inv(std::max(theta[i], 1e-12));
    }
    return u;
}

struct StartCandidate {
    double alpha;
    double gamma;
    double beta;
};

std::vector<StartCandidate> start_grid(const VolModelSpec& spec) {
    if (spec.q == 0) {
        return {{0.1, spec.has_gamma() ? 0.05 : 0.0, 0.0},
                {0.3, spec.has_gamma() ? 0.1 : 0.0, 0.0},
                {0.6, spec.has_gamma() ? 0.1 : 0.0, 0.0}};
    }
    if (spec.has_gamma()) {
        return {{0.03, 0.06, 0.90}, {0.05, 0.10, 0.80}, {0.10, 0.10, 0.60}, {0.02, 0.02, 0.95}};
    }
    return {{0.05, 0.0, 0.90}, {0.10, 0.0, 0.80}, {0.15, 0.0, 0.60}, {0.03, 0.0, 0.95}};
}

VolParams start_params(const VolModelSpec& spec, std::span<const double> returns,
                       const StartCandidate& c) {
    VolParams prm;
    double mean = 0.0;
    for (double r : returns) mean += r;
    mean /= static_cast<double>(returns.size());
    prm.mean_const = spec.include_mean_constant ? mean : 0.0;
    prm.ar.assign(spec.mean_lags.size(), 0.0);
    const double var = presample_variance(returns);
    const double a_each = c.alpha / static_cast<double>(spec.p);
    const double g_each = c.gamma / static_cast<double>(spec.p);
    const double b_each = spec.q > 0 ? c.beta / static_cast<double>(spec.q) : 0.0;
    prm.alpha.assign(spec.p, a_each);
    if (spec.has_gamma()) prm.gamma.assign(spec.p, g_each);
    prm.beta.assign(spec.q, b_each);
    const double pers = c.alpha + 0.5 * c.gamma + (spec.q > 0 ? c.beta : 0.0);
    prm.alpha0 = var * std::max(1.0 - pers, 0.01);
    return prm;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(VolFamily f) {
    switch (f) {
    case VolFamily::arch:
        return "ARCH";
    case VolFamily::garch:
        return "GARCH";
    case VolFamily::tgarch:
        return "TGARCH";
    }
    return "?";
}

VolFamily parse_vol_family(std::string_view s) {
    std::string l(s);
    std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
    if (l == "arch") return VolFamily::arch;
    if (l == "garch") return VolFamily::garch;
    if (l == "tgarch" || l == "gjr") return VolFamily::tgarch;
    throw Error(fmt::format("unknown volatility family '{}'", s));
}

VolModelSpec VolModelSpec::normalized() const {
    VolModelSpec s = *this;
    if (s.p < 1) throw Error("ARCH order p must be at least 1");
    if (s.family == VolFamily::arch) s.q = 0;
    std::sort(s.mean_lags.begin(), s.mean_lags.end());
    s.mean_lags.erase(std::unique(s.mean_lags.begin(), s.mean_lags.end()), s.mean_lags.end());
    if (!s.mean_lags.empty() && s.mean_lags.front() == 0) throw Error("mean lags must be >= 1");
    return s;
}

std::size_t VolModelSpec::max_mean_lag() const {
    return mean_lags.empty() ? 0 : *std::max_element(mean_lags.begin(), mean_lags.end());
}

std::size_t VolModelSpec::burn() const { return std::max({max_mean_lag(), p, q}); }

double VolParams::persistence() const {
    double s = 0.0;
    for (double a : alpha) s += a;
    for (double g : gamma) s += 0.5 * g;
    for (double b : beta) s += b;
    return s;
}

std::vector<double> VolParams::pack(const VolModelSpec& spec) const {
    std::vector<double> v;
    if (spec.include_mean_constant) v.push_back(mean_const);
    v.insert(v.end(), ar.begin(), ar.end());
    v.push_back(alpha0);
    v.insert(v.end(), alpha.begin(), alpha.end());
    if (spec.has_gamma()) {
        auto g = zeros_if_empty(gamma, spec.p);
        v.insert(v.end(), g.begin(), g.end());
    }
    v.insert(v.end(), beta.begin(), beta.end());
    return v;
}

VolParams VolParams::unpack(const VolModelSpec& spec, std::span<const double> theta) {
    const auto l = layout(spec);
    if (theta.size() != l.n_total) {
        throw Error(fmt::format("expected {} parameters, got {}", l.n_total, theta.size()));
    }
    VolParams prm;
    std::size_t i = 0;
    if (spec.include_mean_constant) prm.mean_const = theta[i++];
    for (std::size_t k = 0; k < spec.mean_lags.size(); ++k) prm.ar.push_back(theta[i++]);
    prm.alpha0 = theta[i++];
    for (std::size_t k = 0; k < spec.p; ++k) prm.alpha.push_back(theta[i++]);
    if (spec.has_gamma()) {
        for (std::size_t k = 0; k < spec.p; ++k) prm.gamma.push_back(theta[i++]);
    }
    for (std::size_t k = 0; k < spec.q; ++k) prm.beta.push_back(theta[i++]);
    return prm;
}

std::vector<std::string> VolParams::names(const VolModelSpec& spec) {
    std::vector<std::string> n;
    if (spec.include_mean_constant) n.emplace_back("mean_const");
    for (auto lag : spec.mean_lags) n.push_back(fmt::format("ar[{}]", lag));
    n.emplace_back("alpha0");
    for (std::size_t i = 1; i <= spec.p; ++i) n.push_back(fmt::format("alpha[{}]", i));
    if (spec.has_gamma()) {
        for (std::size_t i = 1; i <= spec.p; ++i) n.push_back(fmt::format("gamma[{}]", i));
    }
    for (std::size_t j = 1; j <= spec.q; ++j) n.push_back(fmt::format("beta[{}]", j));
    return n;
}

std::vector<double> variance_recursion(const VolModelSpec& spec_in, const VolParams& params,
                                       std::span<const double> residuals, double sigma0_sq) {
    const auto spec = spec_in.normalized();
    check_dims(spec, params);
    if (!(sigma0_sq > 0.0)) throw Error("variance_recursion: sigma0_sq must be positive");
    std::vector<double> s2;
    const std::size_t n = residuals.size();
    s2.resize(n);
    const bool asym = spec.has_gamma() && !params.gamma.empty();
    for (std::size_t t = 0; t < n; ++t) {
        double v = params.alpha0;
        for (std::size_t i = 1; i <= spec.p; ++i) {
            const double a = params.alpha[i - 1];
            const double g = asym ? params.gamma[i - 1] : 0.0;
            if (t >= i) {
                const double e = residuals[t - i];
                v += (e < 0.0 ? a + g : a) * e * e;
            } else {
                v += (a + 0.5 * g) * sigma0_sq;
            }
        }
        for (std::size_t j = 1; j <= spec.q; ++j) {
            v += params.beta[j - 1] * (t >= j ? s2[t - j] : sigma0_sq);
        }
        if (!std::isfinite(v)) {
            throw Error(fmt::format("variance recursion produced a non-finite value at index {}", t));
        }
        s2[t] = v;
    }
    return s2;
}

std::vector<double> mean_residuals(const VolModelSpec& spec_in, const VolParams& params,
                                   std::span<const double> returns) {
    const auto spec = spec_in.normalized();
    const std::size_t m = spec.max_mean_lag();
    if (returns.size() <= m) throw Error("mean_residuals: series shorter than the mean lags");
    std::vector<double> eps(returns.size() - m);
    for (std::size_t t = m; t < returns.size(); ++t) {
        double mu = spec.include_mean_constant ? params.mean_const : 0.0;
        for (std::size_t k = 0; k < spec.mean_lags.size(); ++k) {
            mu += params.ar[k] * returns[t - spec.mean_lags[k]];
        }
        eps[t - m] = returns[t] - mu;
    }
    return eps;
}

double presample_variance(std::span<const double> returns) {
    if (returns.empty()) throw Error("presample_variance: empty series");
    const double mean = kernels::sum(returns) / static_cast<double>(returns.size());
    return kernels::sum_sq_dev(returns, mean) / static_cast<double>(returns.size());
}

double log_likelihood(const VolModelSpec& spec_in, const VolParams& params_in,
                      std::span<const double> returns, std::optional<double> sigma0_sq) {
    const auto spec = spec_in.normalized();
    check_dims(spec, params_in);
    if (returns.size() <= spec.burn()) throw Error("log_likelihood: series too short");
    VolParams params = params_in;
    if (!spec.include_mean_constant) params.mean_const = 0.0;
    const double s0 = sigma0_sq.value_or(presample_variance(returns));
    if (!(s0 > 0.0)) throw Error("log_likelihood: pre-sample variance must be positive");
    std::vector<double> eps;
    std::vector<double> s2;
    return -negative_loglik(spec, params, returns, s0, eps, s2);
}

VolModelFit fit(const VolModelSpec& spec_in, std::span<const double> returns,
                const FitOptions& options) {
    const auto spec = spec_in.normalized();
    const std::size_t n = returns.size();
    if (n < 100) throw Error(fmt::format("fit: need at least 100 returns, got {}", n));
    for (double r : returns) {
        if (!std::isfinite(r)) throw Error("fit: returns contain non-finite values");
    }
    const double s0 = presample_variance(returns);
    if (!(s0 > 0.0)) throw Error("fit: returns have zero variance");

    VolModelFit out;
    out.spec = spec;
    out.sigma0_sq = s0;
    out.n_obs = n;
    out.n_effective = n - spec.burn();
    out.param_names = VolParams::names(spec);
    if (n < 250) out.warnings.push_back(fmt::format("only {} returns; estimates may be unreliable", n));

    const auto lay = layout(spec);
    const double cap_scale = kPenaltyScale * static_cast<double>(out.n_effective);

    // Objective over natural parameters, without the stationarity penalty.
    auto natural_nll = [spec, returns, s0](std::span<const double> theta) {
        thread_local std::vector<double> eps;
        thread_local std::vector<double> s2;
        auto prm = VolParams::unpack(spec, theta);
        return negative_loglik(spec, prm, returns, s0, eps, s2);
    };
    auto objective_for = [&](const VolModelSpec& sp) {
        return [sp, natural_nll, cap_scale](std::span<const double> u) {
            auto theta = to_natural(sp, u);
            double v = natural_nll(theta);
            if (sp.constrained && std::isfinite(v)) {
                const double pers = VolParams::unpack(sp, theta).persistence();
                if (pers > kPersistenceCap) {
                    const double d = pers - kPersistenceCap;
                    v += cap_scale * d * d;
                }
            }
            return v;
        };
    };

    // Constrained estimation always runs; it seeds the unconstrained search.
    VolModelSpec cspec = spec;
    cspec.constrained = true;
    const auto cobj = objective_for(cspec);
    std::vector<std::pair<double, std::vector<double>>> starts;
    for (const auto& cand : start_grid(spec)) {
        auto u = from_natural(cspec, start_params(spec, returns, cand).pack(spec));
        const double v = cobj(u);
        if (std::isfinite(v)) starts.emplace_back(v, std::move(u));
    }
    if (starts.empty()) throw Error("fit: no admissible starting point");
    std::stable_sort(starts.begin(), starts.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    MinimizeOptions mopt;
    mopt.gradient_tol = options.gradient_tol;
    mopt.max_iter = options.max_iter;
    Optimum best;
    best.value = kInf;
    const std::size_t tries = std::min<std::size_t>(2, starts.size());
    for (std::size_t i = 0; i < tries; ++i) {
        auto opt = minimize(cobj, starts[i].second, mopt);
        if (opt.value < best.value) best = std::move(opt);
    }
    std::vector<double> theta = to_natural(cspec, best.point);

    if (!spec.constrained) {
        const auto uobj = objective_for(spec);
        auto opt = minimize(uobj, theta, mopt);
        if (opt.value <= best.value) {
            best = std::move(opt);
            theta = best.point;
        }
    }
    (void)lay;

    out.converged = best.converged;
    out.iterations = best.iterations;
    out.estimates = theta;
    out.params = VolParams::unpack(spec, theta);
    out.log_likelihood = -natural_nll(theta);
    out.persistence = out.params.persistence();

    std::vector<double> eps;
    std::vector<double> s2;
    negative_loglik(spec, out.params, returns, s0, eps, s2);
    out.residual_path = eps;
    out.variance_path = s2;

    const std::size_t k = theta.size();
    out.std_errors.assign(k, kNaN);
    out.p_values.assign(k, kNaN);
    try {
        const auto g = fd_gradient(natural_nll, theta);
        double gn = 0.0;
        for (double v : g) gn = std::max(gn, std::abs(v));
        out.gradient_norm = gn;
    } catch (const NonFiniteError&) {
        out.gradient_norm = kNaN;
    }
    try {
        const Matrix h = fd_hessian(natural_nll, theta);
        Eigen::LLT<Matrix> llt(h);
        if (llt.info() == Eigen::Success) {
            const Matrix cov = llt.solve(Matrix::Identity(h.rows(), h.cols()));
            for (std::size_t i = 0; i < k; ++i) {
                const double v = cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
                if (v > 0.0) {
                    out.std_errors[i] = std::sqrt(v);
                    out.p_values[i] = two_sided_normal_p(theta[i] / out.std_errors[i]);
                }
            }
        } else {
            out.warnings.emplace_back("observed information is not positive definite");
        }
    } catch (const NonFiniteError&) {
        out.warnings.emplace_back("likelihood not finite around the estimate; no standard errors");
    }
    if (!out.converged) out.warnings.emplace_back("optimizer did not reach the gradient tolerance");
    if (spec.constrained) {
        for (std::size_t i = 0; i < k; ++i) {
            const auto& name = out.param_names[i];
            const bool bounded = name.rfind("alpha[", 0) == 0 || name.rfind("gamma[", 0) == 0 ||
                                 name.rfind("beta[", 0) == 0;
            if (bounded && theta[i] < 1e-6) {
                out.warnings.push_back(name + " is at its zero bound; the gradient need not vanish there");
            }
        }
    }
    return out;
}

std::vector<double> standardized_residuals(const VolModelFit& f) {
    std::vector<double> z(f.residual_path.size());
    for (std::size_t t = 0; t < z.size(); ++t) {
        z[t] = f.residual_path[t] / std::sqrt(f.variance_path[t]);
    }
    return z;
}

ArchLmResult arch_lm_test(std::span<const double> residuals, std::size_t lags) {
    if (lags < 1) throw Error("arch_lm_test: lags must be at least 1");
    const std::size_t n = residuals.size();
    if (n <= 3 * lags) {
        throw Error(fmt::format("arch_lm_test: need more than {} residuals for {} lags", 3 * lags, lags));
    }
    std::vector<double> u(n);
    for (std::size_t t = 0; t < n; ++t) u[t] = residuals[t] * residuals[t];
    const double mean = kernels::sum(u) / static_cast<double>(n);
    double scale = 0.0;
    for (double v : u) scale = std::max(scale, v);
    if (kernels::sum_sq_dev(u, mean) <= 1e-24 * scale * scale * static_cast<double>(n)) {
        throw Error("arch_lm_test: squared residuals are constant");
    }
    const std::size_t rows = n - lags;
    Matrix x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(lags + 1));
    std::vector<double> y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = r + lags;
        const auto rr = static_cast<Eigen::Index>(r);
        y[r] = u[t];
        x(rr, 0) = 1.0;
        for (std::size_t j = 1; j <= lags; ++j) x(rr, static_cast<Eigen::Index>(j)) = u[t - j];
    }
    const auto f = ols(x, y);
    ArchLmResult res;
    res.lags = lags;
    res.n_obs = rows;
    const double r2 = std::clamp(f.r_squared, 0.0, 1.0);
    const auto k = static_cast<double>(lags);
    const double df2 = static_cast<double>(rows) - k - 1.0;
    res.f_stat = r2 < 1.0 ? (r2 / k) / ((1.0 - r2) / df2) : kInf;
    res.f_pvalue = dist_sf(Distribution::f_dist(k, df2), res.f_stat);
    res.lm_stat = static_cast<double>(rows) * r2;
    res.lm_pvalue = dist_sf(Distribution::chi2(k), res.lm_stat);
    return res;
}

std::vector<NewsImpactPoint> news_impact_curve(const VolModelSpec& spec_in, const VolParams& params,
                                               std::span<const double> epsilon_grid,
                                               std::optional<double> reference_variance) {
    const auto spec = spec_in.normalized();
    check_dims(spec, params);
    const double pers = params.persistence();
    double ref = 0.0;
    if (reference_variance) {
        ref = *reference_variance;
    } else if (pers < 1.0) {
        ref = params.alpha0 / (1.0 - pers);
    } else {
        throw Error("news_impact_curve: nonstationary parameters need a reference variance");
    }
    const bool asym = spec.has_gamma() && !params.gamma.empty();
    double base = params.alpha0;
    for (std::size_t i = 2; i <= spec.p; ++i) {
        base += (params.alpha[i - 1] + (asym ? 0.5 * params.gamma[i - 1] : 0.0)) * ref;
    }
    for (double b : params.beta) base += b * ref;
    const double a1 = params.alpha[0];
    const double g1 = asym ? params.gamma[0] : 0.0;
    std::vector<NewsImpactPoint> out;
    out.reserve(epsilon_grid.size());
    for (double e : epsilon_grid) {
        out.push_back({e, base + (e < 0.0 ? a1 + g1 : a1) * e * e});
    }
    return out;
}

std::vector<NewsImpactPoint> news_impact_curve(const VolModelFit& f,
                                               std::span<const double> epsilon_grid) {
    std::optional<double> ref;
    if (!(f.persistence < 1.0) && !f.variance_path.empty()) {
        ref = kernels::sum(f.variance_path) / static_cast<double>(f.variance_path.size());
    }
    return news_impact_curve(f.spec, f.params, epsilon_grid, ref);
}

std::vector<double> symmetric_grid(double half_width, std::size_t points) {
    if (points < 2) throw Error("symmetric_grid: need at least two points");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = -half_width + 2.0 * half_width * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    // Exact symmetry: mirror the left half onto the right.
    for (std::size_t i = 0; i < points / 2; ++i) g[points - 1 - i] = -g[i];
    if (points % 2 == 1) g[points / 2] = 0.0;
    return g;
}

std::vector<double> simulate(const VolModelSpec& spec_in, const VolParams& params,
                             std::size_t length, std::size_t burn_in, std::uint64_t seed) {
    const auto spec = spec_in.normalized();
    check_dims(spec, params);
    if (!(params.alpha0 > 0.0)) throw Error("simulate: alpha0 must be positive");
    auto nonneg = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0; });
    };
    if (!nonneg(params.alpha) || !nonneg(params.beta) || !nonneg(params.gamma)) {
        throw Error("simulate: ARCH, GARCH and asymmetry coefficients must be nonnegative");
    }
    const double pers = params.persistence();
    if (!(pers < 1.0)) {
        throw Error(fmt::format("simulate: persistence {} >= 1 gives a nonstationary process", pers));
    }
    double ar_sum = 0.0;
    for (double a : params.ar) ar_sum += a;
    const double uncond_var = params.alpha0 / (1.0 - pers);
    const double mu = spec.include_mean_constant ? params.mean_const : 0.0;
    const double uncond_mean = std::abs(ar_sum) < 1.0 ? mu / (1.0 - ar_sum) : mu;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    const std::size_t total = length + burn_in;
    const std::size_t m = spec.max_mean_lag();
    const std::size_t pad = std::max({m, spec.p, spec.q});
    std::vector<double> r(total + pad, uncond_mean);
    std::vector<double> e(total + pad, 0.0);
    std::vector<double> s2(total + pad, uncond_var);
    std::vector<bool> presample(total + pad, false);
    for (std::size_t t = 0; t < pad; ++t) presample[t] = true;
    const bool asym = spec.has_gamma() && !params.gamma.empty();
    for (std::size_t t = pad; t < total + pad; ++t) {
        double v = params.alpha0;
        for (std::size_t i = 1; i <= spec.p; ++i) {
            const double a = params.alpha[i - 1];
            const double g = asym ? params.gamma[i - 1] : 0.0;
            if (presample[t - i]) {
                v += (a + 0.5 * g) * uncond_var;
            } else {
                const double ei = e[t - i];
                v += (ei < 0.0 ? a + g : a) * ei * ei;
            }
        }
        for (std::size_t j = 1; j <= spec.q; ++j) v += params.beta[j - 1] * s2[t - j];
        s2[t] = v;
        e[t] = std::sqrt(v) * z(rng);
        double mean = mu;
        for (std::size_t k = 0; k < spec.mean_lags.size(); ++k) mean += params.ar[k] * r[t - spec.mean_lags[k]];
        r[t] = mean + e[t];
    }
    return {r.begin() + static_cast<std::ptrdiff_t>(pad + burn_in), r.end()};
}

ReturnSeries simulate_series(const VolModelSpec& spec, const VolParams& params, std::size_t length,
                             std::size_t burn_in, std::uint64_t seed, Date start,
                             std::string label) {
    auto values = simulate(spec, params, length, burn_in, seed);
    return ReturnSeries(business_days(start, length), std::move(values), std::move(label));
}

std::string variance_path_csv(const VolModelFit& f, std::span<const Date> return_dates) {
    std::string out = "date,sigma2\n";
    const std::size_t offset = f.spec.max_mean_lag();
    for (std::size_t t = 0; t < f.variance_path.size(); ++t) {
        const std::size_t idx = t + offset;
        out += fmt::format("{},{:.10g}\n",
                           idx < return_dates.size() ? format_date(return_dates[idx]) : std::to_string(idx),
                           f.variance_path[t]);
    }
    return out;
}

std::string news_impact_csv(const std::vector<NewsImpactPoint>& curve) {
    std::string out = "epsilon,sigma2\n";
    for (const auto& p : curve) out += fmt::format("{:.10g},{:.10g}\n", p.epsilon, p.sigma2);
    return out;
}

}  // namespace voltlab
