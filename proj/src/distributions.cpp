#include <cmath>
#include <limits>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

#include "voltlab/numerics.hpp"

namespace voltlab {

namespace {

void validate(const Distribution& d) {
    switch (d.kind) {
    case Distribution::Kind::f:
        if (!(d.df1 > 0.0) || !(d.df2 > 0.0) || !std::isfinite(d.df1) || !std::isfinite(d.df2)) {
            throw Error(fmt::format("F distribution needs positive degrees of freedom, got ({}, {})",
                                    d.df1, d.df2));
        }
        break;
    case Distribution::Kind::chi2:
        if (!(d.df1 > 0.0) || !std::isfinite(d.df1)) {
            throw Error(fmt::format("chi-square distribution needs positive df, got {}", d.df1));
        }
        break;
    case Distribution::Kind::normal:
        break;
    }
}

template <class Dist>
double lower_tail(const Dist& dist, double x, double support_lo) {
    if (std::isnan(x)) throw Error("dist_cdf: x is NaN");
    if (x <= support_lo) return 0.0;
    if (x == std::numeric_limits<double>::infinity()) return 1.0;
    return boost::math::cdf(dist, x);
}

template <class Dist>
double upper_tail(const Dist& dist, double x, double support_lo) {
    if (std::isnan(x)) throw Error("dist_sf: x is NaN");
    if (x <= support_lo) return 1.0;
    if (x == std::numeric_limits<double>::infinity()) return 0.0;
    return boost::math::cdf(boost::math::complement(dist, x));
}

}  // namespace

double dist_cdf(const Distribution& d, double x) {
    validate(d);
    switch (d.kind) {
    case Distribution::Kind::f:
        return lower_tail(boost::math::fisher_f(d.df1, d.df2), x, 0.0);
    case Distribution::Kind::chi2:
        return lower_tail(boost::math::chi_squared(d.df1), x, 0.0);
    case Distribution::Kind::normal:
        return lower_tail(boost::math::normal(), x, -std::numeric_limits<double>::infinity());
    }
    return 0.0;
}

double dist_sf(const Distribution& d, double x) {
    validate(d);
    switch (d.kind) {
    case Distribution::Kind::f:
        return upper_tail(boost::math::fisher_f(d.df1, d.df2), x, 0.0);
    case Distribution::Kind::chi2:
        return upper_tail(boost::math::chi_squared(d.df1), x, 0.0);
    case Distribution::Kind::normal:
        return upper_tail(boost::math::normal(), x, -std::numeric_limits<double>::infinity());
    }
    return 1.0;
}

double dist_quantile(const Distribution& d, double p) {
    validate(d);
    if (!(p > 0.0 && p < 1.0)) throw Error(fmt::format("quantile probability {} outside (0,1)", p));
    switch (d.kind) {
    case Distribution::Kind::f:
        return boost::math::quantile(boost::math::fisher_f(d.df1, d.df2), p);
    case Distribution::Kind::chi2:
        return boost::math::quantile(boost::math::chi_squared(d.df1), p);
    case Distribution::Kind::normal:
        return boost::math::quantile(boost::math::normal(), p);
    }
    return 0.0;
}

double two_sided_normal_p(double z) {
    if (std::isnan(z)) return std::numeric_limits<double>::quiet_NaN();
    return 2.0 * dist_sf(Distribution::normal(), std::abs(z));
}

}  // namespace voltlab
