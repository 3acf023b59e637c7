#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "voltlab/error.hpp"
#include "voltlab/unitroot.hpp"

using namespace voltlab;

TEST_CASE("constant+trend critical values match the published triples") {
    struct Row {
        std::size_t n;
        double c1, c5, c10;
    };
    // Printed triples for the full sample, the three-year windows and the
    // cointegration window.
    for (const Row r : {Row{2674, -3.9615, -3.4115, -3.1276}, Row{730, -3.970621, -3.415959, -3.130252},
                        Row{2904, -3.9644, -3.4129, -3.1285}}) {
        CAPTURE(r.n);
        const auto cv = adf_critical_values(CriticalCase::adf(Deterministic::constant_trend), r.n);
        CHECK(std::abs(cv.pct1 - r.c1) <= 0.01);
        CHECK(std::abs(cv.pct5 - r.c5) <= 0.01);
        CHECK(std::abs(cv.pct10 - r.c10) <= 0.01);
    }
}

TEST_CASE("critical values are ordered and move away from zero as n shrinks") {
    for (const auto c : {CriticalCase::adf(Deterministic::none), CriticalCase::adf(Deterministic::constant),
                         CriticalCase::adf(Deterministic::constant_trend), CriticalCase::eg_residual(2)}) {
        CriticalValues prev = adf_critical_values(c, 10000);
        for (std::size_t n : {5000u, 1000u, 500u, 200u, 100u, 50u}) {
            const auto cv = adf_critical_values(c, n);
            CHECK(cv.pct1 < cv.pct5);
            CHECK(cv.pct5 < cv.pct10);
            CHECK(cv.pct1 < prev.pct1);
            CHECK(cv.pct5 < prev.pct5);
            // The no-constant 10% surface has a positive 1/n term.
            if (c.deterministic != Deterministic::none) CHECK(cv.pct10 < prev.pct10);
            prev = cv;
        }
    }
    CHECK_THROWS_AS(adf_critical_values(CriticalCase::adf(Deterministic::constant), 10), Error);
    CHECK_THROWS_AS(adf_critical_values(CriticalCase::eg_residual(9), 500), Error);
    // Known asymptotic 5% points.
    CHECK(adf_critical_values(CriticalCase::adf(Deterministic::constant), 1000000).pct5 ==
          doctest::Approx(-2.86154).epsilon(1e-4));
    CHECK(adf_critical_values(CriticalCase::eg_residual(2), 1000000).pct5 ==
          doctest::Approx(-3.33613).epsilon(1e-4));
}

TEST_CASE("p-values against MacKinnon's approximate distribution") {
    struct Row {
        double stat, ct, c2, n;
    };
    // statsmodels mackinnonp for (ct, N=1), (c, N=2) and (n, N=1).
    const Row rows[] = {
        {-4.5, 0.0015095180777541192, 0.0012246688283669626, 1e-4},
        {-3.0, 0.1320809847799973, 0.1102054949706574, 0.0026637350127542685},
        {-2.0, 0.6014337722402741, 0.5285780802451076, 0.043520623056049056},
        {-1.0, 0.9441147109023218, 0.902847226038779, 0.28810611212633064},
        {0.5, 0.996851911498776, 0.9926499199201502, 0.824879195252956},
    };
    for (const auto& r : rows) {
        CAPTURE(r.stat);
        CHECK(adf_p_value(r.stat, CriticalCase::adf(Deterministic::constant_trend)) ==
              doctest::Approx(r.ct).epsilon(1e-9));
        CHECK(adf_p_value(r.stat, CriticalCase::eg_residual(2)) == doctest::Approx(r.c2).epsilon(1e-9));
        CHECK(adf_p_value(r.stat, CriticalCase::adf(Deterministic::none)) == doctest::Approx(r.n).epsilon(1e-9));
    }
    CHECK(adf_p_value(-50.0, CriticalCase::adf(Deterministic::constant)) == 1e-4);
    CHECK(adf_p_value(50.0, CriticalCase::adf(Deterministic::constant)) == 1.0 - 1e-4);
    double prev = 0.0;
    for (double s = -6.0; s < 3.0; s += 0.1) {
        const double p = adf_p_value(s, CriticalCase::adf(Deterministic::constant));
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("ADF statistics against a reference implementation") {
    const auto e = testutil::lcg_uniform(1, 300);
    const auto rw = testutil::cumsum(e);

    AdfSpec ct;
    ct.auto_lag = false;
    ct.lag_order = 2;
    const auto a = adf_test(rw, ct);
    CHECK(a.statistic == doctest::Approx(-2.4873018057640444).epsilon(1e-10));
    CHECK(a.p_value == doctest::Approx(0.33433974183550863).epsilon(1e-8));
    CHECK(a.lags_used == 2);
    CHECK(a.n_obs == 297);
    CHECK_FALSE(a.stationary_at_5pct);

    AdfSpec c;
    c.deterministic = Deterministic::constant;
    c.auto_lag = false;
    const auto b = adf_test(rw, c);
    CHECK(b.statistic == doctest::Approx(-2.204239499984181).epsilon(1e-10));
    CHECK(b.p_value == doctest::Approx(0.20471036280644006).epsilon(1e-8));

    AdfSpec none;
    none.deterministic = Deterministic::none;
    none.auto_lag = false;
    none.lag_order = 1;
    const auto d = adf_test(e, none);
    CHECK(d.statistic == doctest::Approx(-12.600770806509242).epsilon(1e-10));
    CHECK(d.p_value == 1e-4);
    CHECK(d.stationary_at_5pct);
    CHECK(d.stationary_at_5pct == (d.statistic < d.critical_values.pct5));
}

TEST_CASE("ADF statistic is scale invariant") {
    const auto rw = testutil::cumsum(testutil::lcg_uniform(8, 400));
    std::vector<double> scaled(rw.size());
    for (std::size_t t = 0; t < rw.size(); ++t) scaled[t] = 100.0 * rw[t] + 5.0;
    AdfSpec s;
    s.auto_lag = false;
    s.lag_order = 3;
    CHECK(adf_test(rw, s).statistic == doctest::Approx(adf_test(scaled, s).statistic).epsilon(1e-9));
}

TEST_CASE("automatic lag selection") {
    CHECK(schwert_max_lag(100) == 12);
    CHECK(schwert_max_lag(1000) == 21);
    // AR(2) differences: BIC should pick about two lags.
    const auto e = testutil::lcg_uniform(21, 3000);
    std::vector<double> dx(e.size(), 0.0);
    for (std::size_t t = 2; t < dx.size(); ++t) dx[t] = 0.5 * dx[t - 1] - 0.3 * dx[t - 2] + e[t];
    const auto x = testutil::cumsum(dx);
    const auto lag = select_lag(x, 8);
    CHECK(lag == 2);
    const auto r = adf_test(x);
    CHECK(r.lags_used == lag);
    CHECK(select_lag(testutil::cumsum(e), 0) == 0);
}

TEST_CASE("ADF input errors") {
    CHECK_THROWS_AS(adf_test(std::vector<double>(10, 1.0)), Error);
    std::vector<double> flat(200, 3.0);
    AdfSpec s;
    s.auto_lag = false;
    CHECK_THROWS_AS(adf_test(flat, s), Error);
}
