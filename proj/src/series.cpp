#include "voltlab/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

namespace voltlab {

namespace {

int parse_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error(fmt::format("invalid integer field '{}' in date", s));
    }
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return fields;
}

double parse_double(std::string_view s) {
    std::string tmp(s);
    char* end = nullptr;
    double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
        throw Error(fmt::format("invalid number '{}'", s));
    }
    return v;
}

}  // namespace

DateFormat detect_date_format(std::string_view text) {
    text = trim(text);
    if (text.size() == 10 && text[4] == '-' && text[7] == '-') return DateFormat::iso;
    if (text.size() == 10 && text[2] == '/' && text[5] == '/') return DateFormat::dmy;
    throw Error(fmt::format("unrecognised date '{}' (expected YYYY-MM-DD or DD/MM/YYYY)", text));
}

Date parse_date(std::string_view text) {
    text = trim(text);
    int y = 0;
    int m = 0;
    int d = 0;
    switch (detect_date_format(text)) {
    case DateFormat::iso:
        y = parse_int(text.substr(0, 4));
        m = parse_int(text.substr(5, 2));
        d = parse_int(text.substr(8, 2));
        break;
    case DateFormat::dmy:
        d = parse_int(text.substr(0, 2));
        m = parse_int(text.substr(3, 2));
        y = parse_int(text.substr(6, 4));
        break;
    }
    Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
              std::chrono::day{static_cast<unsigned>(d)}};
    if (!date.ok()) throw Error(fmt::format("invalid calendar date '{}'", text));
    return date;
}

std::string format_date(Date d) {
    return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(d.year()),
                       static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
}

std::vector<Date> business_days(Date start, std::size_t n) {
    using namespace std::chrono;
    std::vector<Date> out;
    out.reserve(n);
    sys_days day{start};
    while (out.size() < n) {
        weekday wd{day};
        if (wd != Saturday && wd != Sunday) out.emplace_back(day);
        day += days{1};
    }
    return out;
}

template <SeriesKind Kind>
Series<Kind>::Series(std::vector<Date> dates, std::vector<double> values, std::string label)
    : dates_(std::move(dates)), values_(std::move(values)), label_(std::move(label)) {
    if (dates_.size() != values_.size()) {
        throw Error(fmt::format("series '{}': {} dates but {} values", label_, dates_.size(),
                                values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i > 0 && !(dates_[i - 1] < dates_[i])) {
            throw Error(fmt::format("series '{}': dates not strictly increasing at {}", label_,
                                    format_date(dates_[i])));
        }
        if (!std::isfinite(values_[i])) {
            throw Error(fmt::format("series '{}': non-finite value at {}", label_,
                                    format_date(dates_[i])));
        }
        if constexpr (Kind == SeriesKind::price) {
            if (values_[i] <= 0.0) {
                throw Error(fmt::format("series '{}': non-positive price at {}", label_,
                                        format_date(dates_[i])));
            }
        }
    }
}

template class Series<SeriesKind::price>;
template class Series<SeriesKind::log>;
template class Series<SeriesKind::returns>;

PriceSeries parse_prices(std::string_view text, const ParseOptions& options) {
    std::vector<std::string_view> lines;
    {
        std::size_t start = 0;
        while (start <= text.size()) {
            auto pos = text.find('\n', start);
            auto line = text.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                         : pos - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines.push_back(line);
            if (pos == std::string_view::npos) break;
            start = pos + 1;
        }
    }
    std::size_t header_idx = 0;
    while (header_idx < lines.size() && trim(lines[header_idx]).empty()) ++header_idx;
    if (header_idx == lines.size()) throw ParseError(1, "missing header row");

    std::string_view header = lines[header_idx];
    if (header.size() >= 3 && header.substr(0, 3) == "\xEF\xBB\xBF") header.remove_prefix(3);
    const char delim = header.find('\t') != std::string_view::npos ? '\t' : ',';
    auto columns = split(header, delim);
    std::size_t date_col = columns.size();
    std::size_t close_col = columns.size();
    for (std::size_t c = 0; c < columns.size(); ++c) {
        auto name = lower(columns[c]);
        if (name == lower(options.date_column)) date_col = c;
        if (name == lower(options.close_column)) close_col = c;
    }
    if (date_col == columns.size() || close_col == columns.size()) {
        throw ParseError(header_idx + 1,
                         fmt::format("header must name '{}' and '{}' columns",
                                     options.date_column, options.close_column));
    }

    struct Row {
        Date date;
        double close;
        std::size_t line;
    };
    std::vector<Row> rows;
    bool have_format = false;
    DateFormat file_format = DateFormat::iso;
    for (std::size_t i = header_idx + 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (trim(lines[i]).empty()) continue;
        auto fields = split(lines[i], delim);
        if (fields.size() <= std::max(date_col, close_col)) {
            throw ParseError(line_no, "too few fields");
        }
        Row row{};
        row.line = line_no;
        try {
            auto fmt_here = detect_date_format(fields[date_col]);
            if (!have_format) {
                file_format = fmt_here;
                have_format = true;
            } else if (fmt_here != file_format) {
                throw Error("date format differs from earlier rows");
            }
            row.date = parse_date(fields[date_col]);
            row.close = parse_double(fields[close_col]);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(line_no, e.what());
        }
        if (!std::isfinite(row.close) || row.close <= 0.0) {
            throw ParseError(line_no, fmt::format("non-positive or non-finite close price {}",
                                                  fields[close_col]));
        }
        rows.push_back(row);
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].date == rows[i - 1].date) {
            throw ParseError(std::max(rows[i].line, rows[i - 1].line),
                             fmt::format("duplicate date {}", format_date(rows[i].date)));
        }
    }
    std::vector<Date> dates;
    std::vector<double> values;
    dates.reserve(rows.size());
    values.reserve(rows.size());
    for (const auto& r : rows) {
        dates.push_back(r.date);
        values.push_back(r.close);
    }
    return PriceSeries(std::move(dates), std::move(values), options.label);
}

PriceSeries load_prices(const std::filesystem::path& path, const ParseOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(fmt::format("cannot open price file '{}'", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    ParseOptions opts = options;
    if (opts.label.empty()) opts.label = path.stem().string();
    try {
        return parse_prices(buf.str(), opts);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), fmt::format("{}: {}", path.string(), e.what()));
    }
}

std::string prices_to_csv(const PriceSeries& p) {
    std::string out = "date,close\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        out += fmt::format("{},{:.10g}\n", format_date(p.dates()[i]), p[i]);
    }
    return out;
}

ReturnSeries to_returns(const PriceSeries& p) {
    if (p.size() < 2) throw Error("to_returns needs at least two prices");
    std::vector<Date> dates(p.dates().begin() + 1, p.dates().end());
    std::vector<double> values(p.size() - 1);
    for (std::size_t t = 1; t < p.size(); ++t) {
        values[t - 1] = 100.0 * (std::log(p[t]) - std::log(p[t - 1]));
    }
    return ReturnSeries(std::move(dates), std::move(values), p.label());
}

LogSeries to_log(const PriceSeries& p) {
    std::vector<double> values(p.size());
    std::transform(p.values().begin(), p.values().end(), values.begin(),
                   [](double v) { return std::log(v); });
    return LogSeries({p.dates().begin(), p.dates().end()}, std::move(values), p.label());
}

template <SeriesKind Kind>
Series<Kind> difference(const Series<Kind>& s, int order) {
    static_assert(Kind != SeriesKind::price, "prices are differenced through to_returns");
    if (order < 1) throw Error("difference order must be positive");
    if (s.size() <= static_cast<std::size_t>(order)) {
        throw Error(fmt::format("difference of order {} needs more than {} observations", order,
                                order));
    }
    std::vector<double> v(s.values().begin(), s.values().end());
    for (int k = 0; k < order; ++k) {
        for (std::size_t t = 0; t + 1 < v.size(); ++t) v[t] = v[t + 1] - v[t];
        v.pop_back();
    }
    std::vector<Date> dates(s.dates().begin() + order, s.dates().end());
    return Series<Kind>(std::move(dates), std::move(v), s.label());
}

template LogSeries difference(const LogSeries&, int);
template ReturnSeries difference(const ReturnSeries&, int);

template <SeriesKind Kind>
Series<Kind> slice_by_date(const Series<Kind>& s, Date start, Date end, WindowBounds bounds) {
    if (end < start) throw Error("window start is after window end");
    std::vector<Date> dates;
    std::vector<double> values;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Date d = s.dates()[i];
        const bool after = bounds.include_start ? !(d < start) : start < d;
        const bool before = bounds.include_end ? !(end < d) : d < end;
        if (after && before) {
            dates.push_back(d);
            values.push_back(s[i]);
        }
    }
    return Series<Kind>(std::move(dates), std::move(values), s.label());
}

template PriceSeries slice_by_date(const PriceSeries&, Date, Date, WindowBounds);
template LogSeries slice_by_date(const LogSeries&, Date, Date, WindowBounds);
template ReturnSeries slice_by_date(const ReturnSeries&, Date, Date, WindowBounds);

template <SeriesKind A, SeriesKind B>
AlignedPair align(const Series<A>& a, const Series<B>& b) {
    AlignedPair out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        const Date da = a.dates()[i];
        const Date db = b.dates()[j];
        if (da < db) {
            ++i;
        } else if (db < da) {
            ++j;
        } else {
            out.dates.push_back(da);
            out.y.push_back(a[i]);
            out.x.push_back(b[j]);
            ++i;
            ++j;
        }
    }
    if (out.dates.empty()) {
        throw Error(fmt::format("series '{}' and '{}' share no dates", a.label(), b.label()));
    }
    return out;
}

template AlignedPair align(const PriceSeries&, const PriceSeries&);
template AlignedPair align(const LogSeries&, const LogSeries&);
template AlignedPair align(const ReturnSeries&, const ReturnSeries&);
template AlignedPair align(const LogSeries&, const ReturnSeries&);
template AlignedPair align(const ReturnSeries&, const LogSeries&);

PriceSeries prices_from_returns(const ReturnSeries& r, Date base_date, double base_price,
                                std::string label) {
    std::vector<Date> dates;
    std::vector<double> values;
    dates.reserve(r.size() + 1);
    values.reserve(r.size() + 1);
    dates.push_back(base_date);
    values.push_back(base_price);
    double cum = 0.0;
    for (std::size_t t = 0; t < r.size(); ++t) {
        cum += r[t];
        dates.push_back(r.dates()[t]);
        values.push_back(base_price * std::exp(cum / 100.0));
    }
    return PriceSeries(std::move(dates), std::move(values), std::move(label));
}

}  // namespace voltlab
