#include <doctest.h>

#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "test_util.hpp"
#include "voltlab/numerics.hpp"

using namespace voltlab;

namespace {

// Oracle: normal equations solved by a hand-written Cholesky factorisation.
std::vector<double> normal_equations(const Matrix& x, const std::vector<double>& y) {
    const auto k = static_cast<std::size_t>(x.cols());
    const auto n = static_cast<std::size_t>(x.rows());
    std::vector<double> a(k * k, 0.0);
    std::vector<double> b(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t t = 0; t < n; ++t) a[i * k + j] += x(t, i) * x(t, j);
        }
        for (std::size_t t = 0; t < n; ++t) b[i] += x(t, i) * y[t];
    }
    std::vector<double> l(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i * k + j];
            for (std::size_t p = 0; p < j; ++p) s -= l[i * k + p] * l[j * k + p];
            l[i * k + j] = i == j ? std::sqrt(s) : s / l[j * k + j];
        }
    }
    std::vector<double> z(k);
    for (std::size_t i = 0; i < k; ++i) {
        double s = b[i];
        for (std::size_t p = 0; p < i; ++p) s -= l[i * k + p] * z[p];
        z[i] = s / l[i * k + i];
    }
    std::vector<double> beta(k);
    for (std::size_t i = k; i-- > 0;) {
        double s = z[i];
        for (std::size_t p = i + 1; p < k; ++p) s -= l[p * k + i] * beta[p];
        beta[i] = s / l[i * k + i];
    }
    return beta;
}

}  // namespace

TEST_CASE("ols exact line") {
    Matrix x(3, 2);
    x << 1, 1, 1, 2, 1, 3;
    const std::vector<double> y = {2, 4, 6};
    const auto f = ols(x, y);
    CHECK(f.coefficients[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(f.coefficients[0]) < 1e-12);
    CHECK(f.coefficients[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.r_squared == doctest::Approx(1.0));
}

TEST_CASE("ols intercept only on a constant response") {
    Matrix x = Matrix::Ones(5, 1);
    const std::vector<double> y(5, 3.25);
    const auto f = ols(x, y);
    CHECK(f.coefficients[0] == doctest::Approx(3.25));
    CHECK(f.rss < 1e-24);
}

TEST_CASE("ols matches the normal-equations oracle and its invariants") {
    const std::size_t n = 50;
    const auto u1 = testutil::lcg_uniform(1, n);
    const auto u2 = testutil::lcg_uniform(2, n);
    const auto e = testutil::lcg_uniform(3, n);
    Matrix x(n, 3);
    std::vector<double> y(n);
    for (std::size_t t = 0; t < n; ++t) {
        x(t, 0) = 1.0;
        x(t, 1) = 10.0 * u1[t];
        x(t, 2) = u2[t] + 0.3 * u1[t];
        y[t] = 1.5 - 0.7 * x(t, 1) + 2.0 * x(t, 2) + e[t];
    }
    const auto f = ols(x, y);
    const auto oracle = normal_equations(x, y);
    double rss = 0.0;
    double ynorm = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        rss += f.residuals[t] * f.residuals[t];
        ynorm += y[t] * y[t];
    }
    ynorm = std::sqrt(ynorm);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(f.coefficients[i] - oracle[i]) < 1e-8);
        CHECK(f.t_stats[i] == doctest::Approx(f.coefficients[i] / f.std_errors[i]).epsilon(1e-14));
        double xe = 0.0;
        for (std::size_t t = 0; t < n; ++t) xe += x(t, i) * f.residuals[t];
        CHECK(std::abs(xe) <= 1e-8 * ynorm);
    }
    CHECK(f.rss == doctest::Approx(rss).epsilon(1e-10));
    CHECK(f.n_obs == n);
    CHECK(f.n_params == 3);

    // Standard errors against sigma^2 (X'X)^-1 from an explicit inverse.
    const Matrix inv = (x.transpose() * x).inverse();
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(f.std_errors[i] == doctest::Approx(std::sqrt(f.sigma2() * inv(i, i))).epsilon(1e-9));
    }
}

TEST_CASE("ols rank deficiency names the column") {
    Matrix x(6, 3);
    for (int t = 0; t < 6; ++t) {
        x(t, 0) = 1.0;
        x(t, 1) = t;
        x(t, 2) = 2.0 * t + 1.0;
    }
    const std::vector<double> y = {1, 3, 2, 5, 4, 6};
    const std::vector<std::string> names = {"const", "t", "twice"};
    try {
        ols(x, y, names);
        FAIL("expected RankError");
    } catch (const RankError& e) {
        CHECK(std::string(e.what()).find("linearly dependent") != std::string::npos);
    }
    Matrix small(2, 2);
    small << 1, 2, 1, 3;
    CHECK_THROWS_AS(ols(small, std::vector<double>{1, 2}), Error);
}

TEST_CASE("minimize a quadratic, Rosenbrock and a constant") {
    const Objective quad = [](std::span<const double> x) { return (x[0] - 3.0) * (x[0] - 3.0); };
    const auto q = minimize(quad, std::vector<double>{0.0});
    CHECK(q.converged);
    CHECK(std::abs(q.point[0] - 3.0) < 1e-6);

    const Objective rosen = [](std::span<const double> x) {
        return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    const auto r = minimize(rosen, std::vector<double>{-1.2, 1.0}, {1e-8, 2000});
    CHECK(std::abs(r.point[0] - 1.0) < 1e-4);
    CHECK(std::abs(r.point[1] - 1.0) < 1e-4);

    const Objective flat = [](std::span<const double>) { return 7.0; };
    const auto c = minimize(flat, std::vector<double>{1.0, 2.0});
    CHECK(c.converged);
    CHECK(c.gradient_norm == 0.0);
    CHECK(c.iterations == 0);
}

TEST_CASE("minimize is deterministic and honours its contract") {
    const Objective f = [](std::span<const double> x) {
        return std::pow(x[0] - 1.0, 4) + std::pow(x[1] + 2.0, 2) + 0.5 * x[0] * x[1];
    };
    const auto a = minimize(f, std::vector<double>{3.0, 3.0});
    const auto b = minimize(f, std::vector<double>{3.0, 3.0});
    CHECK(a.point == b.point);
    CHECK(a.iterations == b.iterations);
    if (a.converged) CHECK(a.gradient_norm <= 1e-6);

    const auto capped = minimize(f, std::vector<double>{3.0, 3.0}, {1e-12, 1});
    CHECK_FALSE(capped.converged);
}

TEST_CASE("minimize rejects NaN and treats +inf as a barrier") {
    const Objective nan_at_start = [](std::span<const double>) { return std::numeric_limits<double>::quiet_NaN(); };
    try {
        minimize(nan_at_start, std::vector<double>{1.5});
        FAIL("expected NonFiniteError");
    } catch (const NonFiniteError& e) {
        REQUIRE(e.point().size() == 1);
    }
    const Objective barrier = [](std::span<const double> x) {
        return x[0] <= 0.0 ? std::numeric_limits<double>::infinity() : x[0] - std::log(x[0]);
    };
    const auto r = minimize(barrier, std::vector<double>{5.0});
    CHECK(std::abs(r.point[0] - 1.0) < 1e-5);
}

TEST_CASE("finite differences") {
    const Objective sq = [](std::span<const double> x) { return x[0] * x[0]; };
    CHECK(fd_gradient(sq, std::vector<double>{2.0})[0] == doctest::Approx(4.0).epsilon(1e-9));
    const Objective xy = [](std::span<const double> x) { return x[0] * x[1]; };
    const auto g = fd_gradient(xy, std::vector<double>{3.0, 5.0});
    CHECK(g[0] == doctest::Approx(5.0));
    CHECK(g[1] == doctest::Approx(3.0));
    const auto h = fd_hessian(xy, std::vector<double>{3.0, 5.0});
    CHECK(h(0, 1) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(h(0, 1) == h(1, 0));
    CHECK(std::abs(h(0, 0)) < 1e-4);

    const Objective poly = [](std::span<const double> x) {
        return 3.0 * x[0] * x[0] - 2.0 * x[0] * x[1] + 0.5 * x[1] * x[1] + x[0] - 4.0;
    };
    const auto gp = fd_gradient(poly, std::vector<double>{0.7, -1.3}, 1e-5);
    CHECK(std::abs(gp[0] - (6.0 * 0.7 + 2.0 * 1.3 + 1.0)) < 1e-8);
    CHECK(std::abs(gp[1] - (-2.0 * 0.7 - 1.3)) < 1e-8);

    const Objective bad = [](std::span<const double> x) {
        return x[0] > 1.0 ? std::numeric_limits<double>::quiet_NaN() : x[0];
    };
    CHECK_THROWS_AS(fd_gradient(bad, std::vector<double>{1.0}, 0.1), NonFiniteError);
}

TEST_CASE("generalised symmetric eigenproblem") {
    const auto id = gen_eigen_sym(Matrix::Identity(3, 3), Matrix::Identity(3, 3));
    for (double v : id.values) CHECK(v == doctest::Approx(1.0));

    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 0.5;
    a(1, 1) = 2.0;
    const auto d = gen_eigen_sym(a, Matrix::Identity(2, 2));
    CHECK(d.values[0] == doctest::Approx(2.0));
    CHECK(d.values[1] == doctest::Approx(0.5));

    // Closed-form roots of det(a - l b) = 0 for 2x2 SPD pairs.
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto u = testutil::lcg_uniform(seed * 31, 6);
        Matrix m(2, 2);
        m << u[0], u[1], u[2], u[3];
        Matrix b = m * m.transpose() + 0.5 * Matrix::Identity(2, 2);
        Matrix s(2, 2);
        s << u[4], u[5], u[5], -u[4] + 0.3;
        const double qa = b.determinant();
        const double qb = -(s(0, 0) * b(1, 1) + s(1, 1) * b(0, 0) - 2.0 * s(0, 1) * b(0, 1));
        const double qc = s.determinant();
        const double disc = std::sqrt(qb * qb - 4.0 * qa * qc);
        const double hi = (-qb + disc) / (2.0 * qa);
        const double lo = (-qb - disc) / (2.0 * qa);
        const auto r = gen_eigen_sym(s, b);
        CHECK(std::abs(r.values[0] - hi) < 1e-10);
        CHECK(std::abs(r.values[1] - lo) < 1e-10);
        for (double l : r.values) CHECK(std::abs((s - l * b).determinant()) <= 1e-8 * s.norm());
        const Matrix vbv = r.vectors.transpose() * b * r.vectors;
        CHECK((vbv - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
    }
    Matrix notpd = Matrix::Identity(2, 2);
    notpd(1, 1) = -1.0;
    CHECK_THROWS_AS(gen_eigen_sym(Matrix::Identity(2, 2), notpd), Error);
}

TEST_CASE("distribution functions against reference values") {
    // Reference values computed with scipy.stats.
    CHECK(dist_cdf(Distribution::normal(), 0.0) == doctest::Approx(0.5));
    CHECK(dist_cdf(Distribution::normal(), -1.3) == doctest::Approx(0.09680048458561036).epsilon(1e-12));
    CHECK(dist_quantile(Distribution::normal(), 0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(dist_sf(Distribution::f_dist(3, 100), 2.5) == doctest::Approx(0.06383295997908633).epsilon(1e-10));
    CHECK(dist_cdf(Distribution::f_dist(5, 17), 0.7) == doctest::Approx(0.36905878590413327).epsilon(1e-10));
    CHECK(dist_quantile(Distribution::f_dist(3, 100), 0.95) == doctest::Approx(2.6955342548881385).epsilon(1e-10));
    CHECK(dist_cdf(Distribution::chi2(35), 49.7658) == doctest::Approx(0.9496470114913842).epsilon(1e-10));
    CHECK(dist_sf(Distribution::chi2(35), 80.0) == doctest::Approx(2.2347308682752927e-05).epsilon(1e-9));
    CHECK(dist_quantile(Distribution::chi2(35), 0.95) == doctest::Approx(49.80184956820181).epsilon(1e-10));
    CHECK(two_sided_normal_p(1.959963984540054) == doctest::Approx(0.05).epsilon(1e-10));
}

TEST_CASE("distribution functions: monotone, limits, argument checks") {
    const auto f = Distribution::f_dist(3, 100);
    double prev = 0.0;
    for (double x = 0.0; x < 10.0; x += 0.25) {
        const double c = dist_cdf(f, x);
        CHECK(c >= prev);
        CHECK(c + dist_sf(f, x) == doctest::Approx(1.0));
        prev = c;
    }
    CHECK(dist_cdf(Distribution::chi2(4), std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(dist_cdf(Distribution::chi2(4), -1.0) == 0.0);
    CHECK_THROWS_AS(dist_cdf(Distribution::chi2(0), 1.0), Error);
    CHECK_THROWS_AS(dist_cdf(Distribution::f_dist(2, -1), 1.0), Error);
}
