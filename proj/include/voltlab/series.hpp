#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "voltlab/error.hpp"

namespace voltlab {

using Date = std::chrono::year_month_day;

enum class DateFormat { iso, dmy };

/// Parses `YYYY-MM-DD` or `DD/MM/YYYY`. Throws Error on anything else.
Date parse_date(std::string_view text);
DateFormat detect_date_format(std::string_view text);
std::string format_date(Date d);

/// `n` consecutive Monday-Friday dates starting at the first weekday >= start.
std::vector<Date> business_days(Date start, std::size_t n);

enum class SeriesKind { price, log, returns };

/// Date-indexed numeric sequence. Immutable after construction; the
/// constructor enforces strictly increasing dates, equal lengths, finite
/// values, and positive values for prices.
template <SeriesKind Kind>
class Series {
public:
    Series() = default;
    Series(std::vector<Date> dates, std::vector<double> values, std::string label = {});

    std::span<const Date> dates() const noexcept { return dates_; }
    std::span<const double> values() const noexcept { return values_; }
    const std::string& label() const noexcept { return label_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    double operator[](std::size_t i) const { return values_[i]; }

    friend bool operator==(const Series&, const Series&) = default;

private:
    std::vector<Date> dates_;
    std::vector<double> values_;
    std::string label_;
};

using PriceSeries = Series<SeriesKind::price>;
using LogSeries = Series<SeriesKind::log>;
using ReturnSeries = Series<SeriesKind::returns>;

struct AlignedPair {
    std::vector<Date> dates;
    std::vector<double> y;
    std::vector<double> x;
};

struct ParseOptions {
    std::string label;
    std::string date_column = "date";
    std::string close_column = "close";
};

/// Parses delimited text with a header row naming the date and close
/// columns. Comma or tab delimiter is detected from the header. Rows are
/// sorted by date on return.
PriceSeries parse_prices(std::string_view text, const ParseOptions& options = {});
PriceSeries load_prices(const std::filesystem::path& path, const ParseOptions& options = {});
std::string prices_to_csv(const PriceSeries& p);

/// Percent log returns 100 * (ln p[t] - ln p[t-1]); dated at the later day.
ReturnSeries to_returns(const PriceSeries& p);
LogSeries to_log(const PriceSeries& p);

/// Applies first differences `order` times. Dates are those of the later
/// observation of each pair.
template <SeriesKind Kind>
Series<Kind> difference(const Series<Kind>& s, int order = 1);

struct WindowBounds {
    bool include_start = true;
    bool include_end = true;
};

template <SeriesKind Kind>
Series<Kind> slice_by_date(const Series<Kind>& s, Date start, Date end, WindowBounds bounds = {});

/// Intersection of the two date sets, order preserved. `y` takes values from
/// `a`, `x` from `b`. Throws when no dates are shared.
template <SeriesKind A, SeriesKind B>
AlignedPair align(const Series<A>& a, const Series<B>& b);

/// Rebuilds prices from returns: p[t] = base * exp(sum r / 100).
PriceSeries prices_from_returns(const ReturnSeries& r, Date base_date, double base_price,
                                std::string label = {});

}  // namespace voltlab
