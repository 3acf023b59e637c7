#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "voltlab/series.hpp"

using namespace voltlab;

namespace {

Date ymd(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

PriceSeries sample_prices(std::size_t n, std::uint64_t seed = 11) {
    const auto e = testutil::lcg_uniform(seed, n);
    std::vector<double> p(n);
    double lp = std::log(3000.0);
    for (std::size_t i = 0; i < n; ++i) {
        lp += 0.02 * e[i];
        p[i] = std::exp(lp);
    }
    return PriceSeries(business_days(ymd(2010, 4, 16), n), p, "s");
}

}  // namespace

TEST_CASE("parse two iso rows") {
    const auto p = parse_prices("date,close\n2010-04-16,3356.7\n2010-04-19,3192.2\n");
    REQUIRE(p.size() == 2);
    CHECK(p.dates()[0] == ymd(2010, 4, 16));
    CHECK(p[1] == doctest::Approx(3192.2));
}

TEST_CASE("parse day-first dates, tab delimiter, BOM and CRLF") {
    const auto p = parse_prices("\xEF\xBB\xBF" "Date\tOpen\tClose\r\n16/04/2010\t1\t3356.7\r\n19/04/2010\t1\t3192.2\r\n");
    REQUIRE(p.size() == 2);
    CHECK(p.dates()[1] == ymd(2010, 4, 19));
    CHECK(p[0] == doctest::Approx(3356.7));
}

TEST_CASE("zero close is rejected with its line number") {
    try {
        parse_prices("date,close\n2010-04-16,3356.7\n2010-04-19,0\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("reversed file order gives the same series") {
    const auto a = parse_prices("date,close\n2010-04-16,3356.7\n2010-04-19,3192.2\n");
    const auto b = parse_prices("date,close\n2010-04-19,3192.2\n2010-04-16,3356.7\n");
    CHECK(a == b);
}

TEST_CASE("duplicate dates, bad numbers and mixed date formats are errors") {
    CHECK_THROWS_AS(parse_prices("date,close\n2010-04-16,1\n2010-04-16,2\n"), ParseError);
    CHECK_THROWS_AS(parse_prices("date,close\n2010-04-16,abc\n"), ParseError);
    CHECK_THROWS_AS(parse_prices("date,close\n2010-04-16,1\n19/04/2010,2\n"), ParseError);
    CHECK_THROWS_AS(parse_prices("date,close\n2010-13-16,1\n"), ParseError);
    CHECK_THROWS_AS(parse_prices("day,price\n2010-04-16,1\n"), ParseError);
}

TEST_CASE("series constructor enforces invariants") {
    CHECK_THROWS_AS(PriceSeries({ymd(2010, 1, 4)}, {-1.0}), Error);
    CHECK_THROWS_AS(PriceSeries({ymd(2010, 1, 5), ymd(2010, 1, 4)}, {1.0, 2.0}), Error);
    CHECK_THROWS_AS(LogSeries({ymd(2010, 1, 4)}, {1.0, 2.0}), Error);
    CHECK_THROWS_AS(ReturnSeries({ymd(2010, 1, 4)}, {NAN}), Error);
}

TEST_CASE("returns of simple price pairs") {
    const auto d = business_days(ymd(2010, 1, 4), 2);
    CHECK(to_returns(PriceSeries(d, {100.0, 100.0}))[0] == 0.0);
    CHECK(to_returns(PriceSeries(d, {100.0, 110.0}))[0] == doctest::Approx(9.5310).epsilon(1e-5));
    CHECK(to_returns(PriceSeries(d, {110.0, 100.0}))[0] == doctest::Approx(-9.5310).epsilon(1e-5));
    CHECK(to_returns(PriceSeries(d, {100.0, 110.0})).dates()[0] == d[1]);
    CHECK_THROWS_AS(to_returns(PriceSeries({d[0]}, {100.0})), Error);
}

TEST_CASE("log prices") {
    const auto d = business_days(ymd(2010, 1, 4), 2);
    const auto l = to_log(PriceSeries(d, {1.0, std::exp(1.0)}));
    CHECK(l[0] == 0.0);
    CHECK(l[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("differences") {
    const auto d4 = business_days(ymd(2010, 1, 4), 4);
    const LogSeries s(std::vector<Date>(d4.begin(), d4.begin() + 3), {1.0, 3.0, 6.0});
    const auto d1 = difference(s, 1);
    REQUIRE(d1.size() == 2);
    CHECK(d1[0] == 2.0);
    CHECK(d1[1] == 3.0);
    CHECK(d1.dates()[0] == d4[1]);
    const auto d2 = difference(LogSeries(d4, {1.0, 3.0, 6.0, 10.0}), 2);
    CHECK(d2.size() == 2);
    CHECK(d2[0] == 1.0);
    CHECK(d2[1] == 1.0);
    const auto z = difference(LogSeries(d4, {5.0, 5.0, 5.0, 5.0}), 1);
    for (double v : z.values()) CHECK(v == 0.0);
    CHECK_THROWS_AS(difference(s, 3), Error);
}

TEST_CASE("returns equal 100 times differenced logs; price round trip") {
    const auto p = sample_prices(500);
    const auto r = to_returns(p);
    const auto dl = difference(to_log(p), 1);
    REQUIRE(r.size() == p.size() - 1);
    for (std::size_t t = 0; t < r.size(); ++t) CHECK(std::abs(r[t] - 100.0 * dl[t]) <= 1e-12);
    const auto back = prices_from_returns(r, p.dates()[0], p[0]);
    for (std::size_t t = 0; t < p.size(); ++t) CHECK(std::abs(back[t] / p[t] - 1.0) <= 1e-9);
}

TEST_CASE("slicing by date") {
    const auto p = sample_prices(100);
    const auto all = slice_by_date(p, ymd(2000, 1, 1), ymd(2030, 1, 1));
    CHECK(all == p);
    CHECK(slice_by_date(p, ymd(2000, 1, 1), ymd(2001, 1, 1)).empty());
    const auto w = slice_by_date(p, p.dates()[10], p.dates()[20]);
    CHECK(w.size() == 11);
    CHECK(slice_by_date(w, p.dates()[10], p.dates()[20]) == w);
    const auto open = slice_by_date(p, p.dates()[10], p.dates()[20], WindowBounds{false, false});
    CHECK(open.size() == 9);
    CHECK_THROWS_AS(slice_by_date(p, ymd(2011, 1, 1), ymd(2010, 1, 1)), Error);
}

TEST_CASE("alignment by date intersection") {
    const auto p = sample_prices(50);
    const auto aligned = align(p, p);
    CHECK(aligned.dates.size() == 50);

    std::vector<Date> dates(p.dates().begin(), p.dates().end());
    std::vector<double> values(p.values().begin(), p.values().end());
    dates.erase(dates.begin() + 7);
    values.erase(values.begin() + 7);
    const PriceSeries holes(dates, values);
    const auto ab = align(p, holes);
    const auto ba = align(holes, p);
    CHECK(ab.dates.size() == holes.size());
    CHECK(ab.dates == ba.dates);
    CHECK(ab.y == ba.x);

    const PriceSeries other(business_days(ymd(1990, 1, 1), 5), {1, 2, 3, 4, 5});
    CHECK_THROWS_AS(align(p, other), Error);
}

TEST_CASE("business days skip weekends") {
    const auto d = business_days(ymd(2010, 4, 16), 3);  // a Friday
    CHECK(d[0] == ymd(2010, 4, 16));
    CHECK(d[1] == ymd(2010, 4, 19));
    CHECK(d[2] == ymd(2010, 4, 20));
}

TEST_CASE("csv round trip") {
    const auto p = sample_prices(20);
    const auto q = parse_prices(prices_to_csv(p));
    REQUIRE(q.size() == p.size());
    for (std::size_t t = 0; t < p.size(); ++t) CHECK(q[t] == doctest::Approx(p[t]).epsilon(1e-9));
}
