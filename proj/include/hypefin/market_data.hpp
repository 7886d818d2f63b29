#pragma once

#include <istream>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypefin/date.hpp"

namespace hypefin::market {

struct PricePoint {
    Date date;
    double close = 0.0; // strictly positive
};

struct ReturnSeries {
    std::vector<std::pair<Date, double>> entries; // log returns, dated at t
};

struct VolatilitySeries {
    std::vector<std::pair<Date, double>> entries; // annualized, >= 0
    int window = 5;
    double annualization_factor = 252.0;
};

/// r_t = ln(close_t / close_{t-1}).
ReturnSeries log_returns(std::span<const PricePoint> prices);

/// Rolling annualized volatility over the trailing `window` returns:
/// sigma = sqrt((1/N) * sum (r - rbar)^2) * sqrt(annualization_factor).
/// Population (1/N) normalization.
VolatilitySeries rolling_volatility(const ReturnSeries& returns, int window = 5,
                                    double annualization_factor = 252.0);

enum class LabelMode {
    delta, // 1 iff value_t > value_{t-1}, ties -> 0
    sign   // 1 iff value_t > 0
};

/// Binary direction labels. Delta mode emits one fewer entry than the input
/// (no previous value for the first); sign mode labels every entry.
std::vector<std::pair<Date, int>>
direction_labels(std::span<const std::pair<Date, double>> series, LabelMode mode);

/// Price CSV: header `date,ticker,close`, ISO dates, one row per ticker-day.
std::map<std::string, std::vector<PricePoint>> parse_price_csv(std::istream& in);
void write_price_csv(std::ostream& out,
                     const std::map<std::string, std::vector<PricePoint>>& prices);

} // namespace hypefin::market
