#include <cmath>

#include <Eigen/QR>
#include <fmt/format.h>

#include "voltlab/numerics.hpp"

namespace voltlab {

namespace {
constexpr double kRankTol = 1e-10;
}

OlsFit ols(const Matrix& design, std::span<const double> response,
           std::span<const std::string> column_names) {
    const auto n = static_cast<std::size_t>(design.rows());
    const auto k = static_cast<std::size_t>(design.cols());
    if (response.size() != n) {
        throw Error(fmt::format("ols: design has {} rows but response has {}", n, response.size()));
    }
    if (k == 0) throw Error("ols: design has no columns");
    if (n <= k) throw Error(fmt::format("ols: need more observations ({}) than regressors ({})", n, k));
    if (!design.allFinite()) throw Error("ols: design contains non-finite values");

    auto name_of = [&](std::size_t j) {
        return j < column_names.size() ? column_names[j] : std::string{};
    };

    Eigen::Map<const Vector> y(response.data(), static_cast<Eigen::Index>(n));
    if (!y.allFinite()) throw Error("ols: response contains non-finite values");

    Vector scale(static_cast<Eigen::Index>(k));
    for (std::size_t j = 0; j < k; ++j) {
        const double s = design.col(static_cast<Eigen::Index>(j)).norm();
        if (s == 0.0) throw RankError(j, name_of(j));
        scale(static_cast<Eigen::Index>(j)) = s;
    }
    const Matrix xn = design * scale.cwiseInverse().asDiagonal();

    Eigen::ColPivHouseholderQR<Matrix> qr(xn);
    const auto& r = qr.matrixR();
    const auto& perm = qr.colsPermutation().indices();
    const double r00 = std::abs(r(0, 0));
    for (std::size_t i = 0; i < k; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        if (!(std::abs(r(ii, ii)) > kRankTol * r00)) {
            const auto j = static_cast<std::size_t>(perm(ii));
            throw RankError(j, name_of(j));
        }
    }

    Vector beta_n = qr.solve(y);
    // One step of iterative refinement against the original system.
    Vector resid = y - xn * beta_n;
    beta_n += qr.solve(resid);
    resid = y - xn * beta_n;

    OlsFit fit;
    fit.n_obs = n;
    fit.n_params = k;
    fit.coefficients.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        fit.coefficients[j] = beta_n(jj) / scale(jj);
    }
    fit.residuals.assign(resid.data(), resid.data() + n);
    fit.rss = resid.squaredNorm();
    const double ybar = y.mean();
    const double tss = (y.array() - ybar).square().sum();
    fit.r_squared = tss > 0.0 ? 1.0 - fit.rss / tss : (fit.rss == 0.0 ? 1.0 : 0.0);

    // (X'X)^-1 in normalised, permuted coordinates is R^-1 R^-T.
    const auto kk = static_cast<Eigen::Index>(k);
    const Matrix r_top = r.topLeftCorner(kk, kk).triangularView<Eigen::Upper>();
    const Matrix r_inv = r_top.triangularView<Eigen::Upper>().solve(Matrix::Identity(kk, kk));
    const Matrix cov_perm = r_inv * r_inv.transpose();
    const double s2 = fit.sigma2();
    fit.covariance.assign(k * k, 0.0);
    for (Eigen::Index a = 0; a < kk; ++a) {
        for (Eigen::Index b = 0; b < kk; ++b) {
            const auto i = perm(a);
            const auto j = perm(b);
            fit.covariance[static_cast<std::size_t>(i) * k + static_cast<std::size_t>(j)] =
                s2 * cov_perm(a, b) / (scale(i) * scale(j));
        }
    }
    fit.std_errors.resize(k);
    fit.t_stats.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double se = std::sqrt(std::max(0.0, fit.covariance[j * k + j]));
        fit.std_errors[j] = se;
        fit.t_stats[j] = se > 0.0 ? fit.coefficients[j] / se
                                  : std::numeric_limits<double>::quiet_NaN();
    }
    return fit;
}

}  // namespace voltlab
