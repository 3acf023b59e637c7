// Response-surface tables for Dickey-Fuller and Engle-Granger statistics.
//
// Critical values: MacKinnon, J.G. (2010), "Critical Values for
// Cointegration Tests", Queen's Economics Department Working Paper 1227,
// Table 2. Each row is (b_inf, b1, b2, b3) for c(n) = b_inf + b1/n + b2/n^2
// + b3/n^3 at the 1%, 5% and 10% levels.
//
// p-values: MacKinnon, J.G. (1994), "Approximate Asymptotic Distribution
// Functions for Unit-Root and Cointegration Tests", JBES 12(2), the
// small-p / large-p polynomial fits mapped through the normal CDF.

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "voltlab/error.hpp"
#include "voltlab/numerics.hpp"
#include "voltlab/unitroot.hpp"

namespace voltlab {

namespace {

using Surface = std::array<std::array<double, 4>, 3>;

// No constant, single series.
constexpr Surface kNone = {{
    {-2.56574, -2.2358, -3.627, 0.0},
    {-1.94100, -0.2686, -3.365, 31.223},
    {-1.61682, 0.2656, -2.714, 25.364},
}};

// Constant; index N-1 where N is the number of I(1) variables.
constexpr std::array<Surface, 6> kConstant = {{
    {{{-3.43035, -6.5393, -16.786, -79.433},
      {-2.86154, -2.8903, -4.234, -40.040},
      {-2.56677, -1.5384, -2.809, 0.0}}},
    {{{-3.89644, -10.9519, -33.527, 0.0},
      {-3.33613, -6.1101, -6.823, 0.0},
      {-3.04445, -4.2412, -2.720, 0.0}}},
    {{{-4.29374, -14.4354, -33.195, 47.433},
      {-3.74066, -8.5632, -10.852, 27.982},
      {-3.45218, -6.2143, -3.718, 0.0}}},
    {{{-4.64332, -18.1031, -37.972, 0.0},
      {-4.09600, -11.2349, -11.175, 0.0},
      {-3.81020, -8.3931, -4.137, 0.0}}},
    {{{-4.95756, -21.8883, -45.142, 0.0},
      {-4.41519, -14.0405, -12.575, 0.0},
      {-4.13157, -10.7417, -3.784, 0.0}}},
    {{{-5.24568, -25.6688, -57.737, 88.639},
      {-4.70693, -16.9178, -17.492, 60.007},
      {-4.42501, -13.1875, -5.104, 27.877}}},
}};

// Constant and linear trend.
constexpr std::array<Surface, 6> kTrend = {{
    {{{-3.95877, -9.0531, -28.428, -134.155},
      {-3.41049, -4.3904, -9.036, -45.374},
      {-3.12705, -2.5856, -3.925, -22.380}}},
    {{{-4.32762, -15.4387, -35.679, 0.0},
      {-3.78057, -9.5106, -12.074, 0.0},
      {-3.49631, -7.0815, -7.538, 21.892}}},
    {{{-4.66305, -18.7688, -49.793, 104.244},
      {-4.11890, -11.8922, -19.031, 77.332},
      {-3.83511, -9.0723, -8.504, 35.403}}},
    {{{-4.96940, -22.4694, -52.599, 51.314},
      {-4.42871, -14.5876, -18.228, 39.647},
      {-4.14633, -11.2500, -9.873, 54.109}}},
    {{{-5.25276, -26.2183, -59.631, 50.646},
      {-4.71537, -17.3569, -22.660, 91.359},
      {-4.43422, -13.6078, -10.238, 76.781}}},
    {{{-5.51727, -29.9760, -75.222, 202.253},
      {-4.98228, -20.3050, -25.224, 132.03},
      {-4.70233, -16.1253, -9.836, 94.272}}},
}};

struct PValueFit {
    double tau_max;
    double tau_min;
    double tau_star;
    std::array<double, 3> small;  // already scaled
    std::array<double, 4> large;  // already scaled
};

// 1994 fits, N = 1..6. Small-p coefficients are (g0, g1, g2 * 1e-2); large-p
// are (g0, g1 * 1e-1, g2 * 1e-1, g3 * 1e-2).
constexpr std::array<PValueFit, 6> kPNone = {{
    {INFINITY, -19.04, -1.04, {0.6344, 1.2378, 0.032496}, {0.4797, 0.93557, -0.06999, 0.033066}},
    {1.51, -19.62, -1.53, {1.9129, 1.3857, 0.035322}, {1.5578, 0.8558, -0.2083, -0.033549}},
    {0.86, -21.21, -2.68, {2.7648, 1.4502, 0.034186}, {2.2268, 0.68093, -0.32362, -0.054448}},
    {0.88, -23.25, -3.09, {3.4336, 1.4835, 0.0319}, {2.7654, 0.64502, -0.30811, -0.044946}},
    {1.05, -21.63, -3.07, {4.0999, 1.5533, 0.0359}, {3.2684, 0.68051, -0.26778, -0.034972}},
    {1.24, -25.74, -3.77, {4.5388, 1.5344, 0.029807}, {3.7268, 0.7167, -0.23648, -0.028288}},
}};

constexpr std::array<PValueFit, 6> kPConstant = {{
    {2.74, -18.83, -1.61, {2.1659, 1.4412, 0.038269}, {1.7339, 0.93202, -0.12745, -0.010368}},
    {0.92, -18.86, -2.62, {2.92, 1.5012, 0.039796}, {2.1945, 0.64695, -0.29198, -0.042377}},
    {0.55, -23.48, -3.13, {3.4699, 1.4856, 0.03164}, {2.5893, 0.45168, -0.36529, -0.050074}},
    {0.61, -28.07, -3.47, {3.9673, 1.4777, 0.026315}, {3.0387, 0.45452, -0.33666, -0.041921}},
    {0.79, -25.96, -3.78, {4.5509, 1.5338, 0.029545}, {3.5049, 0.52098, -0.29158, -0.033468}},
    {1.0, -23.27, -3.93, {5.1399, 1.6036, 0.034445}, {3.9489, 0.58933, -0.25359, -0.02721}},
}};

constexpr std::array<PValueFit, 6> kPTrend = {{
    {0.7, -16.18, -2.89, {3.2512, 1.6047, 0.049588}, {2.5261, 0.61654, -0.37956, -0.060285}},
    {0.63, -21.15, -3.19, {3.6646, 1.5419, 0.036448}, {2.85, 0.5272, -0.36622, -0.051695}},
    {0.71, -25.37, -3.50, {4.0983, 1.5173, 0.029898}, {3.221, 0.5255, -0.32685, -0.041501}},
    {0.93, -26.63, -3.65, {4.5844, 1.5338, 0.028796}, {3.652, 0.59758, -0.27483, -0.032081}},
    {1.19, -26.53, -3.80, {5.0722, 1.5634, 0.029472}, {4.0712, 0.66428, -0.23464, -0.02546}},
    {1.42, -26.18, -4.36, {5.53, 1.5914, 0.030392}, {4.4735, 0.71757, -0.20681, -0.021196}},
}};

void check_case(CriticalCase c) {
    if (c.n_vars < 1 || c.n_vars > 6) {
        throw Error(fmt::format("critical values support 1..6 variables, got {}", c.n_vars));
    }
    if (c.deterministic == Deterministic::none && c.n_vars != 1) {
        throw Error("the no-deterministic surface exists only for a single series");
    }
}

}  // namespace

CriticalValues adf_critical_values(CriticalCase c, std::size_t n) {
    check_case(c);
    if (n < 20) throw Error(fmt::format("critical values need n >= 20, got {}", n));
    const Surface* surface = nullptr;
    switch (c.deterministic) {
    case Deterministic::none:
        surface = &kNone;
        break;
    case Deterministic::constant:
        surface = &kConstant[c.n_vars - 1];
        break;
    case Deterministic::constant_trend:
        surface = &kTrend[c.n_vars - 1];
        break;
    }
    const double inv = 1.0 / static_cast<double>(n);
    auto eval = [&](const std::array<double, 4>& b) {
        return b[0] + inv * (b[1] + inv * (b[2] + inv * b[3]));
    };
    return {eval((*surface)[0]), eval((*surface)[1]), eval((*surface)[2])};
}

double adf_p_value(double statistic, CriticalCase c) {
    check_case(c);
    const PValueFit* fit = nullptr;
    switch (c.deterministic) {
    case Deterministic::none:
        fit = &kPNone[c.n_vars - 1];
        break;
    case Deterministic::constant:
        fit = &kPConstant[c.n_vars - 1];
        break;
    case Deterministic::constant_trend:
        fit = &kPTrend[c.n_vars - 1];
        break;
    }
    constexpr double lo = 1e-4;
    constexpr double hi = 1.0 - 1e-4;
    if (std::isnan(statistic)) return hi;
    if (statistic > fit->tau_max) return hi;
    if (statistic < fit->tau_min) return lo;
    double z = 0.0;
    if (statistic <= fit->tau_star) {
        const auto& g = fit->small;
        z = g[0] + statistic * (g[1] + statistic * g[2]);
    } else {
        const auto& g = fit->large;
        z = g[0] + statistic * (g[1] + statistic * (g[2] + statistic * g[3]));
    }
    const double p = dist_cdf(Distribution::normal(), z);
    return std::clamp(p, lo, hi);
}

}  // namespace voltlab
