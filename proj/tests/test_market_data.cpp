#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hypefin/errors.hpp"
#include "hypefin/market_data.hpp"
#include "hypefin/rng.hpp"

using namespace hypefin;
using namespace hypefin::market;

namespace {

std::vector<PricePoint> make_prices(std::initializer_list<double> closes) {
    std::vector<PricePoint> out;
    int d = 0;
    for (double c : closes) out.push_back({Date{2024, 1, 1}.plus_days(d++), c});
    return out;
}

} // namespace

TEST_CASE("log returns basics") {
    auto flat = log_returns(make_prices({100.0, 100.0}));
    REQUIRE(flat.entries.size() == 1);
    CHECK(flat.entries[0].second == doctest::Approx(0.0));

    auto up = log_returns(make_prices({100.0, 110.0}));
    CHECK(up.entries[0].second == doctest::Approx(0.0953102).epsilon(1e-6));

    auto vshape = log_returns(make_prices({100.0, 50.0, 100.0}));
    CHECK(vshape.entries[0].second == doctest::Approx(-0.6931472));
    CHECK(vshape.entries[1].second == doctest::Approx(0.6931472));
}

TEST_CASE("log returns errors") {
    CHECK_THROWS_AS(log_returns(make_prices({100.0})), DataError);
    CHECK_THROWS_AS(log_returns(make_prices({100.0, -1.0})), DataError);
    std::vector<PricePoint> unordered{{Date{2024, 1, 2}, 100.0}, {Date{2024, 1, 1}, 101.0}};
    CHECK_THROWS_AS(log_returns(unordered), DataError);
}

TEST_CASE("price round trip via exp-cumsum") {
    Rng rng(3);
    std::vector<PricePoint> prices;
    double close = 120.0;
    for (int i = 0; i < 50; ++i) {
        prices.push_back({Date{2024, 1, 1}.plus_days(i), close});
        close *= std::exp(rng.normal(0.0, 0.02));
    }
    const auto returns = log_returns(prices);
    double rebuilt = prices.front().close;
    for (std::size_t i = 0; i < returns.entries.size(); ++i) {
        rebuilt *= std::exp(returns.entries[i].second);
        CHECK(rebuilt == doctest::Approx(prices[i + 1].close).epsilon(1e-12));
    }
}

TEST_CASE("rolling volatility hand value") {
    ReturnSeries rs;
    const double vals[] = {0.01, -0.01, 0.01, -0.01, 0.01};
    for (int i = 0; i < 5; ++i) rs.entries.emplace_back(Date{2024, 1, 1}.plus_days(i), vals[i]);
    auto vol = rolling_volatility(rs, 5, 252.0);
    REQUIRE(vol.entries.size() == 1);
    // (1/5) sum (r - 0.002)^2 = 0.000096
    CHECK(vol.entries[0].second == doctest::Approx(std::sqrt(0.000096) * std::sqrt(252.0)));

    ReturnSeries constant;
    for (int i = 0; i < 5; ++i) constant.entries.emplace_back(Date{2024, 1, 1}.plus_days(i), 0.01);
    CHECK(rolling_volatility(constant, 5, 252.0).entries[0].second == doctest::Approx(0.0));
}

TEST_CASE("rolling volatility factor 1 equals population std dev") {
    Rng rng(9);
    ReturnSeries rs;
    for (int i = 0; i < 30; ++i)
        rs.entries.emplace_back(Date{2024, 1, 1}.plus_days(i), rng.normal(0.0, 0.02));
    auto vol = rolling_volatility(rs, 5, 1.0);
    // last window by hand
    double mean = 0.0;
    for (int i = 25; i < 30; ++i) mean += rs.entries[i].second / 5.0;
    double var = 0.0;
    for (int i = 25; i < 30; ++i) {
        const double d = rs.entries[i].second - mean;
        var += d * d / 5.0;
    }
    CHECK(vol.entries.back().second == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
}

TEST_CASE("rolling volatility shift equivariance and scaling") {
    Rng rng(11);
    ReturnSeries rs, shifted, scaled;
    for (int i = 0; i < 12; ++i) {
        const double r = rng.normal(0.0, 0.05);
        const Date d = Date{2024, 1, 1}.plus_days(i);
        rs.entries.emplace_back(d, r);
        shifted.entries.emplace_back(d, r + 0.37);
        scaled.entries.emplace_back(d, 2.5 * r);
    }
    auto v0 = rolling_volatility(rs, 5, 252.0);
    auto vs = rolling_volatility(shifted, 5, 252.0);
    auto vc = rolling_volatility(scaled, 5, 252.0);
    for (std::size_t i = 0; i < v0.entries.size(); ++i) {
        CHECK(vs.entries[i].second == doctest::Approx(v0.entries[i].second).epsilon(1e-9));
        CHECK(vc.entries[i].second == doctest::Approx(2.5 * v0.entries[i].second).epsilon(1e-12));
    }
}

TEST_CASE("rolling volatility errors") {
    ReturnSeries rs;
    rs.entries.emplace_back(Date{2024, 1, 1}, 0.01);
    rs.entries.emplace_back(Date{2024, 1, 2}, 0.01);
    CHECK_THROWS_AS(rolling_volatility(rs, 1, 252.0), DataError);
    CHECK_THROWS_AS(rolling_volatility(rs, 5, 252.0), DataError);
}

TEST_CASE("direction labels") {
    std::vector<std::pair<Date, double>> vals;
    const double v[] = {1.0, 2.0, 2.0, 1.5};
    for (int i = 0; i < 4; ++i) vals.emplace_back(Date{2024, 1, 1}.plus_days(i), v[i]);
    auto labels = direction_labels(vals, LabelMode::delta);
    REQUIRE(labels.size() == 3);
    CHECK(labels[0].second == 1);
    CHECK(labels[1].second == 0); // tie -> 0
    CHECK(labels[2].second == 0);

    std::vector<std::pair<Date, double>> rets{{Date{2024, 1, 1}, 0.01}, {Date{2024, 1, 2}, -0.02}};
    auto sign = direction_labels(rets, LabelMode::sign);
    REQUIRE(sign.size() == 2);
    CHECK(sign[0].second == 1);
    CHECK(sign[1].second == 0);

    std::vector<std::pair<Date, double>> constant;
    for (int i = 0; i < 5; ++i) constant.emplace_back(Date{2024, 1, 1}.plus_days(i), 3.3);
    for (const auto& [d, l] : direction_labels(constant, LabelMode::delta)) CHECK(l == 0);

    CHECK_THROWS_AS(direction_labels(std::span<const std::pair<Date, double>>(rets.data(), 1),
                                     LabelMode::delta),
                    DataError);
}

TEST_CASE("price CSV round trip") {
    std::map<std::string, std::vector<PricePoint>> prices{
        {"AAA", make_prices({100.0, 101.5})},
        {"BBB", make_prices({55.25, 54.0, 56.125})},
    };
    std::ostringstream os;
    write_price_csv(os, prices);
    std::istringstream is(os.str());
    auto parsed = parse_price_csv(is);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed["BBB"][2].close == doctest::Approx(56.125));
    CHECK(parsed["AAA"][1].date == Date{2024, 1, 2});

    std::istringstream bad("date,ticker,close\n2024-01-01,AAA,-5\n");
    CHECK_THROWS_AS(parse_price_csv(bad), ParseError);
    std::istringstream badheader("when,what,how\n");
    CHECK_THROWS_AS(parse_price_csv(badheader), ParseError);
}
