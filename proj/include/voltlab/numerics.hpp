#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "voltlab/error.hpp"

namespace voltlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Least squares

struct OlsFit {
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    std::vector<double> t_stats;
    std::vector<double> residuals;
    double rss = 0.0;
    /// Centred R^2, 1 - RSS/TSS.
    double r_squared = 0.0;
    std::size_t n_obs = 0;
    std::size_t n_params = 0;
    /// sigma^2 (X'X)^-1 with sigma^2 = RSS/(n-k); row-major k*k.
    std::vector<double> covariance;

    double sigma2() const { return rss / static_cast<double>(n_obs - n_params); }
};

/// Least squares by column-pivoted Householder QR on unit-norm columns.
/// Throws RankError when the pivoted diagonal ratio falls below 1e-10;
/// `column_names`, when given, label the offending column.
OlsFit ols(const Matrix& design, std::span<const double> response,
           std::span<const std::string> column_names = {});

// ---------------------------------------------------------------------------
// Minimisation

using Objective = std::function<double(std::span<const double>)>;

struct MinimizeOptions {
    double gradient_tol = 1e-6;
    int max_iter = 500;
};

struct Optimum {
    std::vector<double> point;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    /// Infinity norm of the central-difference gradient at `point`.
    double gradient_norm = 0.0;
};

/// BFGS on central-difference gradients with a backtracking line search.
/// When the line search cannot make progress the search restarts from a
/// Nelder-Mead polish of the current point. `+inf` from the objective is
/// treated as a rejected step; NaN or `-inf` throws NonFiniteError.
Optimum minimize(const Objective& f, std::span<const double> x0, const MinimizeOptions& options = {});

/// Componentwise finite-difference step max(1e-5, 1e-7 |x_i|).
double fd_step(double x);

/// Central differences. A non-finite evaluation throws NonFiniteError.
/// A non-positive `h` selects fd_step per coordinate.
std::vector<double> fd_gradient(const Objective& f, std::span<const double> x, double h = 0.0);
Matrix fd_hessian(const Objective& f, std::span<const double> x, double h = 0.0);

// ---------------------------------------------------------------------------
// Symmetric-definite generalised eigenproblem  a v = lambda b v

struct GenEigen {
    std::vector<double> values;  ///< descending
    Matrix vectors;              ///< column i pairs with values[i]; v' b v = 1
};

GenEigen gen_eigen_sym(const Matrix& a, const Matrix& b);

// ---------------------------------------------------------------------------
// Distributions

struct Distribution {
    enum class Kind { f, chi2, normal } kind = Kind::normal;
    double df1 = 0.0;
    double df2 = 0.0;

    static Distribution f_dist(double d1, double d2) { return {Kind::f, d1, d2}; }
    static Distribution chi2(double df) { return {Kind::chi2, df, 0.0}; }
    static Distribution normal() { return {Kind::normal, 0.0, 0.0}; }
};

/// Lower-tail probability P(X <= x). Throws on non-positive degrees of freedom.
double dist_cdf(const Distribution& d, double x);
/// Upper-tail probability P(X > x), computed directly for small p-values.
double dist_sf(const Distribution& d, double x);
double dist_quantile(const Distribution& d, double p);

/// Two-sided normal p-value for a z-ratio.
double two_sided_normal_p(double z);

}  // namespace voltlab
