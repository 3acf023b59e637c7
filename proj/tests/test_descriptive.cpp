#include <doctest.h>

#include <cmath>
#include <numeric>

#include "test_util.hpp"
#include "voltlab/descriptive.hpp"

using namespace voltlab;

namespace {

// Textbook autocorrelation, two plain loops.
double naive_acf(const std::vector<double>& x, std::size_t k) {
    const double n = static_cast<double>(x.size());
    const double m = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        den += (x[t] - m) * (x[t] - m);
        if (t + k < x.size()) num += (x[t] - m) * (x[t + k] - m);
    }
    return num / den;
}

}  // namespace

TEST_CASE("acf against a naive oracle") {
    const auto e = testutil::lcg_uniform(1, 300);
    const auto r = acf(e, 12);
    REQUIRE(r.size() == 13);
    CHECK(r[0] == 1.0);
    for (std::size_t k = 1; k <= 12; ++k) CHECK(std::abs(r[k] - naive_acf(e, k)) < 1e-12);
}

TEST_CASE("pacf at lag one equals acf at lag one; AR(1) pacf cuts off") {
    const auto e = testutil::lcg_uniform(7, 4000);
    std::vector<double> x(e.size());
    x[0] = e[0];
    for (std::size_t t = 1; t < x.size(); ++t) x[t] = 0.6 * x[t - 1] + e[t];
    const auto r = acf(x, 5);
    const auto p = pacf(x, 5);
    CHECK(std::abs(p[0] - r[1]) < 1e-14);
    CHECK(std::abs(p[0] - 0.6) < 0.05);
    for (std::size_t k = 1; k < 5; ++k) CHECK(std::abs(p[k]) < 0.05);
    // Second partial from the closed form (r2 - r1^2) / (1 - r1^2).
    CHECK(std::abs(p[1] - (r[2] - r[1] * r[1]) / (1.0 - r[1] * r[1])) < 1e-12);
}

TEST_CASE("Ljung-Box against reference values") {
    // statsmodels acorr_ljungbox on the same stream.
    const auto e = testutil::lcg_uniform(1, 300);
    const auto rows = ljung_box(e, 10);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0].lag == 1);
    CHECK(rows[0].q_stat == doctest::Approx(1.5039910308329214).epsilon(1e-10));
    CHECK(rows[9].q_stat == doctest::Approx(14.225462873314632).epsilon(1e-10));
    CHECK(rows[9].q_pvalue == doctest::Approx(0.16295372562653052).epsilon(1e-9));
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].q_stat >= rows[k - 1].q_stat);
}

TEST_CASE("correlogram summary uses chi2(K-1) for the printed quantile") {
    const auto e = testutil::lcg_uniform(3, 800);
    const auto rows = ljung_box(e, 36);
    const auto s = summarize_correlogram(rows);
    CHECK(s.max_lag == 36);
    CHECK(s.q_stat == rows.back().q_stat);
    CHECK(s.chi2_crit_5pct == doctest::Approx(49.80184956820181).epsilon(1e-9));
    CHECK(s.ac.min <= s.ac.mean);
    CHECK(s.ac.mean <= s.ac.max);
}

TEST_CASE("summary moments against direct formulas") {
    const auto e = testutil::lcg_uniform(9, 501);
    std::vector<double> r(e.size());
    for (std::size_t t = 0; t < e.size(); ++t) r[t] = 2.0 * e[t] + 0.3 * e[t] * e[t];
    const auto s = summary(r);
    const double n = static_cast<double>(r.size());
    const double m = std::accumulate(r.begin(), r.end(), 0.0) / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : r) {
        m2 += std::pow(v - m, 2);
        m3 += std::pow(v - m, 3);
        m4 += std::pow(v - m, 4);
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    CHECK(s.n_obs == r.size());
    CHECK(s.mean == doctest::Approx(m).epsilon(1e-13));
    CHECK(s.std_dev == doctest::Approx(std::sqrt(m2 * n / (n - 1.0))).epsilon(1e-12));
    REQUIRE_FALSE(s.degenerate());
    CHECK(*s.skewness == doctest::Approx(m3 / std::pow(m2, 1.5)).epsilon(1e-10));
    CHECK(*s.kurtosis_raw == doctest::Approx(m4 / (m2 * m2)).epsilon(1e-10));
    CHECK(*s.kurtosis_excess == doctest::Approx(*s.kurtosis_raw - 3.0).epsilon(1e-12));
    CHECK(s.min == *std::min_element(r.begin(), r.end()));
    CHECK(s.max == *std::max_element(r.begin(), r.end()));
}

TEST_CASE("summary of a constant series is degenerate, not an error") {
    const std::vector<double> flat(40, 0.0);
    const auto s = summary(flat);
    CHECK(s.std_dev == 0.0);
    CHECK(s.degenerate());
    CHECK_THROWS(summary(std::vector<double>{1.0}));
}

TEST_CASE("affine invariance of skewness and kurtosis") {
    const auto e = testutil::lcg_uniform(4, 300);
    std::vector<double> r(e.size());
    for (std::size_t t = 0; t < e.size(); ++t) r[t] = e[t] * e[t] * e[t];
    std::vector<double> s(r.size());
    for (std::size_t t = 0; t < r.size(); ++t) s[t] = 7.0 * r[t] - 2.0;
    const auto a = summary(r);
    const auto b = summary(s);
    CHECK(*a.skewness == doctest::Approx(*b.skewness).epsilon(1e-9));
    CHECK(*a.kurtosis_raw == doctest::Approx(*b.kurtosis_raw).epsilon(1e-9));
}

TEST_CASE("histogram counts every observation once") {
    const auto e = testutil::lcg_uniform(5, 1234);
    const auto h = histogram(e, 50);
    REQUIRE(h.counts.size() == 50);
    REQUIRE(h.bin_edges.size() == 51);
    CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == e.size());
    CHECK(h.bin_edges.front() == *std::min_element(e.begin(), e.end()));
    CHECK(h.bin_edges.back() == *std::max_element(e.begin(), e.end()));
    for (std::size_t i = 1; i < h.bin_edges.size(); ++i) CHECK(h.bin_edges[i] > h.bin_edges[i - 1]);

    const auto w = histogram_by_width(std::vector<double>{0.0, 0.1, 0.2, 0.95}, 0.5);
    CHECK(std::accumulate(w.counts.begin(), w.counts.end(), std::size_t{0}) == 4);
    CHECK(w.counts.front() == 3);
    CHECK(histogram_csv(h).find("count") != std::string::npos);
}
