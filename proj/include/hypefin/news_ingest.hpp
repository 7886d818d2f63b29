#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hypefin/date.hpp"

namespace hypefin::news {

struct NewsArticle {
    Date date;
    std::string ticker;
    std::string source;
    std::string title;
    double score = 0.0; // sentiment in [-4, +4]

    bool operator==(const NewsArticle&) const = default;
};

struct Corpus {
    std::vector<NewsArticle> articles;
    std::optional<std::pair<Date, Date>> date_range() const;
};

struct TickerWeightRow {
    std::string ticker;
    double close_price = 0.0;
    double capital_millions = 0.0;
    double capital_weight = 0.0; // fraction
    double news_weight = 0.0;    // fraction
};

struct TickerWeightTable {
    std::vector<TickerWeightRow> rows;

    std::map<std::string, double> capital_weights() const;
    std::map<std::string, double> news_weights() const;
    std::vector<std::string> tickers() const;
};

struct BiasVector {
    std::map<std::string, double> entries; // ticker -> news share minus market share
};

using WeightMap = std::map<std::string, double>;

/// News CSV: header `date,ticker,source,title,score`, score in [-4, +4].
Corpus parse_news_csv(std::istream& in);
void write_news_csv(std::ostream& out, const Corpus& corpus);

/// Drops same-day same-ticker articles whose lowercased title token sets have
/// Jaccard similarity >= threshold with an earlier kept article. Order
/// preserved; first occurrence wins.
Corpus dedupe_articles(const Corpus& corpus, double threshold = 0.9);

/// Share of articles per ticker: count_i / total. Sums to 1.
WeightMap news_count_weights(const Corpus& corpus, std::span<const std::string> tickers);

/// bias_i = news_weight_i - market_weight_i.
BiasVector bias_vector(const WeightMap& news_weights, const WeightMap& market_weights);

/// The bundled 30-row SOXX constituent weight table.
TickerWeightTable appendix_a_fixture();

/// Weight-table CSV: header
/// `ticker,close_price,capital_millions,capital_weight_pct,news_weight_pct`.
/// Percent columns are converted to fractions at parse time.
TickerWeightTable parse_weight_table_csv(std::istream& in);
void write_weight_table_csv(std::ostream& out, const TickerWeightTable& table);

/// Lowercased title tokens (split on non-alphanumeric), deduplicated.
std::vector<std::string> title_tokens(const std::string& title);
double jaccard(std::span<const std::string> a, std::span<const std::string> b);

} // namespace hypefin::news
