#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "voltlab/error.hpp"
#include "voltlab/volatility.hpp"

using namespace voltlab;

namespace {

VolParams garch_params(double a0, double a1, double b1, double mu = 0.0) {
    VolParams p;
    p.mean_const = mu;
    p.alpha0 = a0;
    p.alpha = {a1};
    p.beta = {b1};
    return p;
}

VolParams tgarch_params(double a0, double a1, double g1, double b1, double mu = 0.0) {
    auto p = garch_params(a0, a1, b1, mu);
    p.gamma = {g1};
    return p;
}

// Direct transcription of the variance equation for (p, q) = (1, 1).
std::vector<double> oracle_s2(const std::vector<double>& eps, double a0, double a1, double g1, double b1,
                              double s0) {
    std::vector<double> s2(eps.size());
    for (std::size_t t = 0; t < eps.size(); ++t) {
        const double e_prev2 = t == 0 ? s0 : eps[t - 1] * eps[t - 1];
        const double ind = t == 0 ? 0.5 : (eps[t - 1] < 0.0 ? 1.0 : 0.0);
        const double s_prev = t == 0 ? s0 : s2[t - 1];
        s2[t] = a0 + (a1 + g1 * ind) * e_prev2 + b1 * s_prev;
    }
    return s2;
}

double oracle_loglik(const std::vector<double>& eps, const std::vector<double>& s2) {
    double ll = 0.0;
    for (std::size_t t = 0; t < eps.size(); ++t) {
        ll += -0.5 * (std::log(2.0 * std::numbers::pi) + std::log(s2[t]) + eps[t] * eps[t] / s2[t]);
    }
    return ll;
}

}  // namespace

TEST_CASE("GARCH and TGARCH recursion against a direct oracle") {
    const auto e = testutil::lcg_uniform(1, 400);
    const double s0 = 0.08;
    {
        const auto spec = VolModelSpec::garch();
        const auto s2 = variance_recursion(spec, garch_params(0.01, 0.1, 0.8), e, s0);
        const auto o = oracle_s2(e, 0.01, 0.1, 0.0, 0.8, s0);
        for (std::size_t t = 0; t < e.size(); ++t) CHECK(std::abs(s2[t] - o[t]) <= 1e-14 * o[t]);
    }
    {
        const auto spec = VolModelSpec::tgarch();
        const auto s2 = variance_recursion(spec, tgarch_params(0.01, 0.05, 0.1, 0.8), e, s0);
        const auto o = oracle_s2(e, 0.01, 0.05, 0.1, 0.8, s0);
        for (std::size_t t = 0; t < e.size(); ++t) CHECK(std::abs(s2[t] - o[t]) <= 1e-14 * o[t]);
    }
}

TEST_CASE("general-order recursion agrees with the (1,1) fast path") {
    // GARCH(2,2) with the second lags switched off takes the general loop.
    const auto e = testutil::lcg_uniform(3, 300);
    VolParams p2;
    p2.alpha0 = 0.02;
    p2.alpha = {0.1, 0.0};
    p2.beta = {0.85, 0.0};
    p2.gamma = {0.05, 0.0};
    VolModelSpec s22 = VolModelSpec::tgarch(2, 2);
    const auto general = variance_recursion(s22, p2, e, 0.1);
    const auto fast = variance_recursion(VolModelSpec::tgarch(), tgarch_params(0.02, 0.1, 0.05, 0.85), e, 0.1);
    for (std::size_t t = 0; t < e.size(); ++t) CHECK(general[t] == doctest::Approx(fast[t]).epsilon(1e-14));
}

TEST_CASE("TGARCH with zero gamma equals GARCH") {
    const auto r = testutil::lcg_uniform(5, 500);
    const double lg = log_likelihood(VolModelSpec::garch(), garch_params(0.01, 0.08, 0.85, 0.01), r);
    const double lt = log_likelihood(VolModelSpec::tgarch(), tgarch_params(0.01, 0.08, 0.0, 0.85, 0.01), r);
    CHECK(lg == doctest::Approx(lt).epsilon(1e-14));
}

TEST_CASE("log-likelihood against the oracle") {
    const auto r = testutil::lcg_uniform(6, 600);
    const auto prm = garch_params(0.005, 0.07, 0.9, 0.02);
    const double s0 = presample_variance(r);
    std::vector<double> eps(r.size());
    for (std::size_t t = 0; t < r.size(); ++t) eps[t] = r[t] - 0.02;
    const auto o = oracle_s2(eps, 0.005, 0.07, 0.0, 0.9, s0);
    // burn() = 1: the first term is left out.
    std::vector<double> e1(eps.begin() + 1, eps.end());
    std::vector<double> o1(o.begin() + 1, o.end());
    CHECK(log_likelihood(VolModelSpec::garch(), prm, r) == doctest::Approx(oracle_loglik(e1, o1)).epsilon(1e-12));
}

TEST_CASE("AR mean residuals") {
    VolModelSpec spec = VolModelSpec::garch();
    spec.mean_lags = {4};
    VolParams p = garch_params(0.01, 0.1, 0.8, 0.5);
    p.ar = {0.25};
    const std::vector<double> r = {1, 2, 3, 4, 5, 6, 7};
    const auto e = mean_residuals(spec, p, r);
    REQUIRE(e.size() == 3);
    CHECK(e[0] == doctest::Approx(5.0 - 0.5 - 0.25 * 1.0));
    CHECK(e[2] == doctest::Approx(7.0 - 0.5 - 0.25 * 3.0));
}

TEST_CASE("pack and unpack are inverse") {
    VolModelSpec spec = VolModelSpec::tgarch(2, 1);
    spec.mean_lags = {1, 4};
    VolParams p;
    p.mean_const = 0.1;
    p.ar = {0.2, -0.1};
    p.alpha0 = 0.03;
    p.alpha = {0.04, 0.02};
    p.gamma = {0.07, 0.01};
    p.beta = {0.8};
    const auto theta = p.pack(spec);
    CHECK(theta.size() == VolParams::names(spec).size());
    CHECK(VolParams::names(spec)[0] == "mean_const");
    const auto back = VolParams::unpack(spec, theta);
    CHECK(back.pack(spec) == theta);
    CHECK(p.persistence() == doctest::Approx(0.04 + 0.02 + 0.5 * 0.08 + 0.8));
}

TEST_CASE("simulation is deterministic in the seed") {
    const auto spec = VolModelSpec::garch();
    const auto prm = garch_params(0.05, 0.05, 0.9);
    const auto a = simulate(spec, prm, 1000, 200, 42);
    const auto b = simulate(spec, prm, 1000, 200, 42);
    const auto c = simulate(spec, prm, 1000, 200, 43);
    CHECK(a.size() == 1000);
    CHECK(a == b);
    CHECK(a != c);
    CHECK_THROWS_AS(simulate(spec, garch_params(0.05, 0.2, 0.85), 100, 10, 1), Error);
}

TEST_CASE("fit recovers GARCH parameters and is self-consistent") {
    const auto spec = VolModelSpec::garch();
    const auto r = simulate(spec, garch_params(0.05, 0.08, 0.88, 0.03), 4000, 500, 7);
    const auto f = fit(spec, r);
    CHECK(f.converged);
    CHECK(std::abs(f.params.alpha[0] - 0.08) < 0.04);
    CHECK(std::abs(f.params.beta[0] - 0.88) < 0.06);
    CHECK(f.n_effective == r.size() - 1);
    CHECK(log_likelihood(spec, f.params, r, f.sigma0_sq) == doctest::Approx(f.log_likelihood).epsilon(1e-12));
    CHECK(f.gradient_norm <= 1e-3);
    for (double se : f.std_errors) CHECK(se > 0.0);
    const auto z = standardized_residuals(f);
    double m2 = 0.0;
    for (double v : z) m2 += v * v;
    CHECK(m2 / static_cast<double>(z.size()) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("scaling identity of the likelihood") {
    // Returns x10 with a0 x100: every s2 scales by 100, so logL shifts by -T ln 10.
    const auto spec = VolModelSpec::tgarch();
    const auto r = testutil::lcg_uniform(9, 800);
    std::vector<double> r10(r.size());
    for (std::size_t t = 0; t < r.size(); ++t) r10[t] = 10.0 * r[t];
    const auto p = tgarch_params(0.004, 0.06, 0.05, 0.88, 0.01);
    const auto p10 = tgarch_params(0.4, 0.06, 0.05, 0.88, 0.1);
    const double l1 = log_likelihood(spec, p, r);
    const double l10 = log_likelihood(spec, p10, r10);
    const double t_eff = static_cast<double>(r.size() - spec.burn());
    CHECK(l10 == doctest::Approx(l1 - t_eff * std::log(10.0)).epsilon(1e-12));
}

TEST_CASE("unconstrained likelihood signals an invalid variance path") {
    const auto r = testutil::lcg_uniform(10, 100);
    const double ll = log_likelihood(VolModelSpec::garch(), garch_params(-1.0, 0.0, 0.0), r);
    CHECK(ll == -std::numeric_limits<double>::infinity());
}

TEST_CASE("ARCH-LM against a reference implementation") {
    // statsmodels het_arch(e, nlags=3).
    const auto e = testutil::lcg_uniform(1, 300);
    const auto a = arch_lm_test(e, 3);
    CHECK(a.lags == 3);
    CHECK(a.n_obs == 297);
    CHECK(a.lm_stat == doctest::Approx(3.7345839746544502).epsilon(1e-9));
    CHECK(a.lm_pvalue == doctest::Approx(0.291587350513612).epsilon(1e-8));
    CHECK(a.f_stat == doctest::Approx(1.243734679440447).epsilon(1e-9));
    CHECK(a.f_pvalue == doctest::Approx(0.2940541647424882).epsilon(1e-8));
    CHECK_THROWS_AS(arch_lm_test(std::vector<double>(50, 1.0), 3), Error);
    CHECK_THROWS_AS(arch_lm_test(e, 0), Error);
}

TEST_CASE("news impact curves") {
    const auto grid = symmetric_grid(3.0, 41);
    REQUIRE(grid.size() == 41);
    CHECK(grid[20] == 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(grid[i] == -grid[grid.size() - 1 - i]);

    const auto g = news_impact_curve(VolModelSpec::garch(), garch_params(0.05, 0.1, 0.85), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(g[i].sigma2 == g[grid.size() - 1 - i].sigma2);
    CHECK(g[20].sigma2 == doctest::Approx(0.05 + 0.85 * 0.05 / 0.05));

    const auto t = news_impact_curve(VolModelSpec::tgarch(), tgarch_params(0.05, 0.05, 0.1, 0.85), grid);
    for (std::size_t i = 0; i < 20; ++i) CHECK(t[i].sigma2 > t[grid.size() - 1 - i].sigma2);
    CHECK(news_impact_csv(t).find("sigma2") != std::string::npos);
}
