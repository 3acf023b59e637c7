#include "voltlab/causality.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include <fmt/format.h>

#include "voltlab/error.hpp"
#include "voltlab/numerics.hpp"

namespace voltlab {

namespace {

// RSS of `dep` on a constant, its own lags and (optionally) lags of `other`.
double lag_rss(std::span<const double> dep, std::span<const double> other, std::size_t lag,
               bool with_other) {
    const std::size_t n = dep.size();
    const std::size_t rows = n - lag;
    const std::size_t cols = 1 + lag * (with_other ? 2 : 1);
    Matrix design(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    std::vector<std::string> names;
    names.emplace_back("const");
    for (std::size_t j = 1; j <= lag; ++j) names.push_back(fmt::format("own(-{})", j));
    if (with_other) {
        for (std::size_t j = 1; j <= lag; ++j) names.push_back(fmt::format("cross(-{})", j));
    }
    std::vector<double> response(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = r + lag;
        const auto rr = static_cast<Eigen::Index>(r);
        response[r] = dep[t];
        design(rr, 0) = 1.0;
        for (std::size_t j = 1; j <= lag; ++j) {
            design(rr, static_cast<Eigen::Index>(j)) = dep[t - j];
            if (with_other) design(rr, static_cast<Eigen::Index>(lag + j)) = other[t - j];
        }
    }
    return ols(design, response, names).rss;
}

}  // namespace

GrangerResult granger_test(std::span<const double> y, std::span<const double> x, std::size_t lag) {
    if (lag < 1) throw Error("granger_test: lag must be at least 1");
    if (y.size() != x.size()) {
        throw Error(fmt::format("granger_test: lengths differ ({} vs {})", y.size(), x.size()));
    }
    const std::size_t n = y.size();
    if (n <= 3 * lag + 2) {
        throw Error(fmt::format("granger_test: {} observations are too few for lag {}", n, lag));
    }
    for (std::size_t t = 0; t < n; ++t) {
        if (!std::isfinite(y[t]) || !std::isfinite(x[t])) throw Error("granger_test: non-finite input");
    }
    GrangerResult res;
    res.lag = lag;
    res.n_effective = n - lag;
    res.df1 = static_cast<double>(lag);
    res.df2 = static_cast<double>(res.n_effective) - 2.0 * static_cast<double>(lag) - 1.0;
    const auto dist = Distribution::f_dist(res.df1, res.df2);

    auto direction = [&](std::span<const double> dep, std::span<const double> other,
                         double& f, double& p) {
        const double rss_u = lag_rss(dep, other, lag, true);
        const double rss_r = lag_rss(dep, other, lag, false);
        f = std::max(rss_r - rss_u, 0.0) / res.df1 / (rss_u / res.df2);
        p = dist_sf(dist, f);
    };
    direction(y, x, res.f_x_to_y, res.p_x_to_y);
    direction(x, y, res.f_y_to_x, res.p_y_to_x);
    return res;
}

std::vector<GrangerResult> granger_scan(std::span<const double> y, std::span<const double> x,
                                        std::size_t max_lag, bool parallel) {
    if (max_lag < 1) throw Error("granger_scan: max_lag must be at least 1");
    if (y.size() <= 3 * max_lag + 2) {
        throw Error(fmt::format("granger_scan: {} observations are too few for lag {}", y.size(), max_lag));
    }
    std::vector<GrangerResult> rows(max_lag);
    if (!parallel) {
        for (std::size_t lag = 1; lag <= max_lag; ++lag) rows[lag - 1] = granger_test(y, x, lag);
        return rows;
    }
    std::vector<std::future<GrangerResult>> jobs;
    jobs.reserve(max_lag);
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        jobs.push_back(std::async(std::launch::async, [y, x, lag] { return granger_test(y, x, lag); }));
    }
    for (std::size_t i = 0; i < max_lag; ++i) rows[i] = jobs[i].get();
    return rows;
}

}  // namespace voltlab
