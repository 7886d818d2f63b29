#include "hypefin/market_data.hpp"

#include <cmath>
#include <cstdlib>

#include "hypefin/csv.hpp"
#include "hypefin/errors.hpp"
#include "hypefin/kernels.hpp"

namespace hypefin::market {

ReturnSeries log_returns(std::span<const PricePoint> prices) {
    if (prices.size() < 2) throw DataError("log_returns: need at least 2 price points");
    ReturnSeries out;
    out.entries.reserve(prices.size() - 1);
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i].close > 0.0))
            throw DataError("log_returns: nonpositive close at " + prices[i].date.to_string());
        if (i > 0 && !(prices[i - 1].date < prices[i].date))
            throw DataError("log_returns: dates not strictly increasing at " +
                            prices[i].date.to_string());
    }
    for (std::size_t i = 1; i < prices.size(); ++i)
        out.entries.emplace_back(prices[i].date, std::log(prices[i].close / prices[i - 1].close));
    return out;
}

VolatilitySeries rolling_volatility(const ReturnSeries& returns, int window,
                                    double annualization_factor) {
    if (window < 2) throw DataError("rolling_volatility: window must be >= 2");
    if (!(annualization_factor > 0.0))
        throw DataError("rolling_volatility: annualization factor must be positive");
    const auto& e = returns.entries;
    if (e.size() < static_cast<std::size_t>(window))
        throw DataError("rolling_volatility: series shorter than window");

    std::vector<double> vals(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) vals[i] = e[i].second;

    VolatilitySeries out;
    out.window = window;
    out.annualization_factor = annualization_factor;
    const double ann = std::sqrt(annualization_factor);
    const std::size_t w = static_cast<std::size_t>(window);
    for (std::size_t i = w - 1; i < vals.size(); ++i) {
        std::span<const double> win(vals.data() + (i + 1 - w), w);
        const double var = kernels::variance_pop(win);
        // guard tiny negative round-off
        out.entries.emplace_back(e[i].first, std::sqrt(var < 0.0 ? 0.0 : var) * ann);
    }
    return out;
}

std::vector<std::pair<Date, int>>
direction_labels(std::span<const std::pair<Date, double>> series, LabelMode mode) {
    if (series.size() < 2) throw DataError("direction_labels: need at least 2 entries");
    std::vector<std::pair<Date, int>> out;
    if (mode == LabelMode::sign) {
        // sign labels need no previous value, so every entry gets one
        out.reserve(series.size());
        for (const auto& [date, value] : series)
            out.emplace_back(date, value > 0.0 ? 1 : 0);
        return out;
    }
    out.reserve(series.size() - 1);
    for (std::size_t i = 1; i < series.size(); ++i)
        out.emplace_back(series[i].first, series[i].second > series[i - 1].second ? 1 : 0);
    return out;
}

std::map<std::string, std::vector<PricePoint>> parse_price_csv(std::istream& in) {
    std::vector<std::string> fields;
    long line = 1;
    if (!csv::read_record(in, fields, line))
        throw ParseError("price CSV: empty file", 1);
    if (fields.size() != 3 || fields[0] != "date" || fields[1] != "ticker" || fields[2] != "close")
        throw ParseError("price CSV: expected header 'date,ticker,close'", 1);

    std::map<std::string, std::vector<PricePoint>> out;
    long start = line;
    while (csv::read_record(in, fields, line)) {
        if (fields.size() != 3)
            throw ParseError("price CSV: expected 3 fields", start);
        Date date = Date::parse(fields[0]);
        char* end = nullptr;
        const double close = std::strtod(fields[2].c_str(), &end);
        if (end == fields[2].c_str() || *end != '\0' || !(close > 0.0))
            throw ParseError("price CSV: invalid close '" + fields[2] + "'", start);
        if (fields[1].empty())
            throw ParseError("price CSV: empty ticker", start);
        out[fields[1]].push_back({date, close});
        start = line;
    }
    return out;
}

void write_price_csv(std::ostream& out,
                     const std::map<std::string, std::vector<PricePoint>>& prices) {
    csv::write_record(out, {"date", "ticker", "close"});
    for (const auto& [ticker, series] : prices)
        for (const auto& p : series)
            csv::write_record(out, {p.date.to_string(), ticker, csv::fmt(p.close)});
}

} // namespace hypefin::market
