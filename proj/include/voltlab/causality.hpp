#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace voltlab {

/// Bidirectional Granger test at one lag. Both regressions include a
/// constant and use the sample t = lag .. n-1.
struct GrangerResult {
    std::size_t lag = 0;
    double f_x_to_y = 0.0;  ///< H0: x does not Granger-cause y
    double p_x_to_y = 1.0;
    double f_y_to_x = 0.0;
    double p_y_to_x = 1.0;
    std::size_t n_effective = 0;
    double df1 = 0.0;
    double df2 = 0.0;
};

GrangerResult granger_test(std::span<const double> y, std::span<const double> x, std::size_t lag);

/// Rows for lags 1..max_lag. With `parallel` the rows are computed on
/// separate threads; results are identical either way.
std::vector<GrangerResult> granger_scan(std::span<const double> y, std::span<const double> x,
                                        std::size_t max_lag, bool parallel = false);

}  // namespace voltlab
