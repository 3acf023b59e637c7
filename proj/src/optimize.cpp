#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "voltlab/numerics.hpp"

namespace voltlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double checked(const Objective& f, std::span<const double> x) {
    const double v = f(x);
    if (std::isnan(v) || v == -kInf) {
        throw NonFiniteError(fmt::format("objective returned {}", v), {x.begin(), x.end()});
    }
    return v;
}

double inf_norm(std::span<const double> g) {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
}

/// Central differences that fall back to a one-sided difference when one
/// neighbour is rejected (+inf). Both neighbours rejected yields +inf.
std::vector<double> robust_gradient(const Objective& f, std::span<const double> x, double fx) {
    std::vector<double> g(x.size());
    std::vector<double> xp(x.begin(), x.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = fd_step(x[i]);
        xp[i] = x[i] + h;
        const double fp = checked(f, xp);
        xp[i] = x[i] - h;
        const double fm = checked(f, xp);
        xp[i] = x[i];
        if (std::isfinite(fp) && std::isfinite(fm)) {
            g[i] = (fp - fm) / (2.0 * h);
        } else if (std::isfinite(fp)) {
            g[i] = (fp - fx) / h;
        } else if (std::isfinite(fm)) {
            g[i] = (fx - fm) / h;
        } else {
            g[i] = kInf;
        }
    }
    return g;
}

struct NmResult {
    std::vector<double> x;
    double f;
};

NmResult nelder_mead(const Objective& f, std::vector<double> x0, double f0, int max_evals) {
    const std::size_t k = x0.size();
    std::vector<std::vector<double>> simplex(k + 1, x0);
    std::vector<double> fv(k + 1, f0);
    for (std::size_t i = 0; i < k; ++i) {
        simplex[i + 1][i] += x0[i] != 0.0 ? 0.05 * x0[i] : 0.00025;
        fv[i + 1] = checked(f, simplex[i + 1]);
    }
    int evals = static_cast<int>(k);
    std::vector<std::size_t> order(k + 1);
    std::vector<double> centroid(k), trial(k), trial2(k);
    auto point = [&](double coef, const std::vector<double>& worst, std::vector<double>& out) {
        for (std::size_t j = 0; j < k; ++j) out[j] = centroid[j] + coef * (worst[j] - centroid[j]);
    };
    while (evals < max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[k - 1];
        if (std::isfinite(fv[worst]) &&
            std::abs(fv[worst] - fv[best]) <= 1e-13 * (std::abs(fv[best]) + 1e-13)) {
            break;
        }
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= k; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < k; ++j) centroid[j] += simplex[i][j] / static_cast<double>(k);
        }
        point(-1.0, simplex[worst], trial);
        const double fr = checked(f, trial);
        ++evals;
        if (fr < fv[best]) {
            point(-2.0, simplex[worst], trial2);
            const double fe = checked(f, trial2);
            ++evals;
            if (fe < fr) {
                simplex[worst] = trial2;
                fv[worst] = fe;
            } else {
                simplex[worst] = trial;
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            simplex[worst] = trial;
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            point(outside ? -0.5 : 0.5, simplex[worst], trial2);
            const double fc = checked(f, trial2);
            ++evals;
            if (fc < std::min(fr, fv[worst])) {
                simplex[worst] = trial2;
                fv[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= k; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < k; ++j) {
                        simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
                    }
                    fv[i] = checked(f, simplex[i]);
                    ++evals;
                }
            }
        }
    }
    const auto best = static_cast<std::size_t>(
        std::min_element(fv.begin(), fv.end()) - fv.begin());
    return {simplex[best], fv[best]};
}

}  // namespace

double fd_step(double x) { return std::max(1e-5, 1e-7 * std::abs(x)); }

std::vector<double> fd_gradient(const Objective& f, std::span<const double> x, double h) {
    std::vector<double> g(x.size());
    std::vector<double> xp(x.begin(), x.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double step = h > 0.0 ? h : fd_step(x[i]);
        xp[i] = x[i] + step;
        const double fp = f(xp);
        xp[i] = x[i] - step;
        const double fm = f(xp);
        xp[i] = x[i];
        if (!std::isfinite(fp) || !std::isfinite(fm)) {
            throw NonFiniteError("fd_gradient: non-finite objective in the difference stencil",
                                 {x.begin(), x.end()});
        }
        g[i] = (fp - fm) / (2.0 * step);
    }
    return g;
}

Matrix fd_hessian(const Objective& f, std::span<const double> x, double h) {
    const std::size_t k = x.size();
    const auto kk = static_cast<Eigen::Index>(k);
    Matrix hess(kk, kk);
    std::vector<double> xp(x.begin(), x.end());
    std::vector<double> steps(k);
    for (std::size_t i = 0; i < k; ++i) steps[i] = h > 0.0 ? h : fd_step(x[i]);
    auto eval = [&](std::span<const double> p) {
        const double v = f(p);
        if (!std::isfinite(v)) {
            throw NonFiniteError("fd_hessian: non-finite objective in the difference stencil",
                                 {p.begin(), p.end()});
        }
        return v;
    };
    const double f0 = eval(xp);
    for (std::size_t i = 0; i < k; ++i) {
        const double hi = steps[i];
        xp[i] = x[i] + hi;
        const double fp = eval(xp);
        xp[i] = x[i] - hi;
        const double fm = eval(xp);
        xp[i] = x[i];
        hess(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
            (fp - 2.0 * f0 + fm) / (hi * hi);
        for (std::size_t j = 0; j < i; ++j) {
            const double hj = steps[j];
            auto corner = [&](double si, double sj) {
                xp[i] = x[i] + si * hi;
                xp[j] = x[j] + sj * hj;
                const double v = eval(xp);
                xp[i] = x[i];
                xp[j] = x[j];
                return v;
            };
            const double v = (corner(1, 1) - corner(1, -1) - corner(-1, 1) + corner(-1, -1)) /
                             (4.0 * hi * hj);
            hess(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            hess(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
    }
    return hess;
}

Optimum minimize(const Objective& f, std::span<const double> x0, const MinimizeOptions& options) {
    const std::size_t k = x0.size();
    const auto kk = static_cast<Eigen::Index>(k);
    std::vector<double> x(x0.begin(), x0.end());
    double fx = checked(f, x);
    if (!std::isfinite(fx)) {
        throw NonFiniteError("minimize: objective is not finite at the starting point", x);
    }

    Optimum out;
    std::vector<double> g = robust_gradient(f, x, fx);
    Matrix hinv = Matrix::Identity(kk, kk);
    bool fresh_hinv = true;
    int restarts = 0;
    constexpr int kMaxRestarts = 4;
    std::vector<double> xn(k);
    int iter = 0;

    for (; iter < options.max_iter; ++iter) {
        if (inf_norm(g) <= options.gradient_tol) break;

        Eigen::Map<const Vector> gv(g.data(), kk);
        Vector d = -(hinv * gv);
        double slope = gv.dot(d);
        if (!(slope < 0.0) || !d.allFinite()) {
            hinv.setIdentity();
            fresh_hinv = true;
            d = -gv;
            slope = gv.dot(d);
        }
        if (!std::isfinite(slope)) break;

        // First step on a fresh inverse Hessian is kept to unit length in x.
        double step = 1.0;
        if (fresh_hinv) step = std::min(1.0, 1.0 / std::max(d.lpNorm<Eigen::Infinity>(), 1e-300));

        bool accepted = false;
        double fn = kInf;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < k; ++i) xn[i] = x[i] + step * d(static_cast<Eigen::Index>(i));
            fn = checked(f, xn);
            if (std::isfinite(fn) && fn <= fx + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }

        if (!accepted) {
            if (!fresh_hinv) {
                hinv.setIdentity();
                fresh_hinv = true;
                continue;
            }
            if (restarts >= kMaxRestarts) break;
            ++restarts;
            auto nm = nelder_mead(f, x, fx, 200 * static_cast<int>(k + 1));
            if (!(nm.f < fx)) break;
            x = std::move(nm.x);
            fx = nm.f;
            g = robust_gradient(f, x, fx);
            hinv.setIdentity();
            fresh_hinv = true;
            continue;
        }

        std::vector<double> gn = robust_gradient(f, xn, fn);
        Vector s(kk), yv(kk);
        for (std::size_t i = 0; i < k; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            s(ii) = xn[i] - x[i];
            yv(ii) = gn[i] - g[i];
        }
        x = xn;
        fx = fn;
        g = std::move(gn);

        const double sy = s.dot(yv);
        if (yv.allFinite() && sy > 1e-12 * s.norm() * yv.norm()) {
            if (fresh_hinv) {
                hinv *= sy / yv.squaredNorm();
                fresh_hinv = false;
            }
            const double rho = 1.0 / sy;
            const Vector hy = hinv * yv;
            hinv += (rho * rho * yv.dot(hy) + rho) * (s * s.transpose()) -
                    rho * (hy * s.transpose() + s * hy.transpose());
        }
    }

    out.point = x;
    out.value = fx;
    out.iterations = iter;
    out.gradient_norm = inf_norm(g);
    out.converged = out.gradient_norm <= options.gradient_tol;
    return out;
}

}  // namespace voltlab
