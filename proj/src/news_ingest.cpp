#include "hypefin/news_ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>

#include "hypefin/csv.hpp"
#include "hypefin/errors.hpp"

namespace hypefin::news {

std::optional<std::pair<Date, Date>> Corpus::date_range() const {
    if (articles.empty()) return std::nullopt;
    Date lo = articles.front().date, hi = lo;
    for (const auto& a : articles) {
        lo = std::min(lo, a.date);
        hi = std::max(hi, a.date);
    }
    return std::make_pair(lo, hi);
}

std::map<std::string, double> TickerWeightTable::capital_weights() const {
    std::map<std::string, double> out;
    for (const auto& r : rows) out[r.ticker] = r.capital_weight;
    return out;
}

std::map<std::string, double> TickerWeightTable::news_weights() const {
    std::map<std::string, double> out;
    for (const auto& r : rows) out[r.ticker] = r.news_weight;
    return out;
}

std::vector<std::string> TickerWeightTable::tickers() const {
    std::vector<std::string> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.ticker);
    return out;
}

namespace {

double parse_double(const std::string& s, const char* what, long line) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ParseError(std::string("invalid ") + what + " '" + s + "'", line);
    return v;
}

} // namespace

Corpus parse_news_csv(std::istream& in) {
    std::vector<std::string> fields;
    long line = 1;
    if (!csv::read_record(in, fields, line))
        throw ParseError("news CSV: empty file", 1);
    const std::vector<std::string> header{"date", "ticker", "source", "title", "score"};
    if (fields != header)
        throw ParseError("news CSV: expected header 'date,ticker,source,title,score'", 1);

    Corpus out;
    long start = line;
    while (csv::read_record(in, fields, line)) {
        if (fields.size() != 5)
            throw ParseError("news CSV: expected 5 fields", start);
        NewsArticle a;
        a.date = Date::parse(fields[0]);
        a.ticker = fields[1];
        a.source = fields[2];
        a.title = fields[3];
        a.score = parse_double(fields[4], "score", start);
        if (a.ticker.empty()) throw ParseError("news CSV: empty ticker", start);
        if (a.score < -4.0 || a.score > 4.0)
            throw ParseError("news CSV: score outside [-4, +4]", start);
        out.articles.push_back(std::move(a));
        start = line;
    }
    return out;
}

void write_news_csv(std::ostream& out, const Corpus& corpus) {
    csv::write_record(out, {"date", "ticker", "source", "title", "score"});
    for (const auto& a : corpus.articles)
        csv::write_record(out, {a.date.to_string(), a.ticker, a.source, a.title,
                                csv::fmt(a.score)});
}

std::vector<std::string> title_tokens(const std::string& title) {
    std::set<std::string> seen;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            seen.insert(cur);
            cur.clear();
        }
    };
    for (unsigned char c : title) {
        if (std::isalnum(c))
            cur += static_cast<char>(std::tolower(c));
        else
            flush();
    }
    flush();
    return {seen.begin(), seen.end()};
}

double jaccard(std::span<const std::string> a, std::span<const std::string> b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t inter = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) { // both sorted unique
        if (a[i] == b[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    const std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

Corpus dedupe_articles(const Corpus& corpus, double threshold) {
    if (threshold < 0.0 || threshold > 1.0)
        throw DataError("dedupe_articles: threshold must lie in [0, 1]");
    struct Kept {
        std::vector<std::string> tokens;
    };
    // (date serial, ticker) -> token sets of kept articles
    std::map<std::pair<std::int64_t, std::string>, std::vector<Kept>> kept;
    Corpus out;
    out.articles.reserve(corpus.articles.size());
    for (const auto& a : corpus.articles) {
        auto tokens = title_tokens(a.title);
        auto& bucket = kept[{a.date.serial(), a.ticker}];
        const bool dup = std::any_of(bucket.begin(), bucket.end(), [&](const Kept& k) {
            return jaccard(k.tokens, tokens) >= threshold;
        });
        if (!dup) {
            bucket.push_back({std::move(tokens)});
            out.articles.push_back(a);
        }
    }
    return out;
}

WeightMap news_count_weights(const Corpus& corpus, std::span<const std::string> tickers) {
    if (tickers.empty()) throw DataError("news_count_weights: empty ticker list");
    WeightMap counts;
    for (const auto& t : tickers) counts[t] = 0.0;
    double total = 0.0;
    for (const auto& a : corpus.articles) {
        auto it = counts.find(a.ticker);
        if (it == counts.end()) continue; // outside the requested universe
        it->second += 1.0;
        total += 1.0;
    }
    if (total == 0.0) throw DataError("news_count_weights: no articles for the given tickers");
    for (auto& [t, c] : counts) c /= total;
    return counts;
}

BiasVector bias_vector(const WeightMap& news_weights, const WeightMap& market_weights) {
    if (news_weights.size() != market_weights.size())
        throw DataError("bias_vector: key sets differ in size");
    BiasVector out;
    for (const auto& [ticker, nw] : news_weights) {
        auto it = market_weights.find(ticker);
        if (it == market_weights.end())
            throw DataError("bias_vector: ticker '" + ticker + "' missing from market weights");
        out.entries[ticker] = nw - it->second;
    }
    return out;
}

TickerWeightTable parse_weight_table_csv(std::istream& in) {
    std::vector<std::string> fields;
    long line = 1;
    if (!csv::read_record(in, fields, line))
        throw ParseError("weight CSV: empty file", 1);
    const std::vector<std::string> header{"ticker", "close_price", "capital_millions",
                                          "capital_weight_pct", "news_weight_pct"};
    if (fields != header)
        throw ParseError("weight CSV: unexpected header", 1);
    TickerWeightTable out;
    long start = line;
    while (csv::read_record(in, fields, line)) {
        if (fields.size() != 5)
            throw ParseError("weight CSV: expected 5 fields", start);
        TickerWeightRow r;
        r.ticker = fields[0];
        r.close_price = parse_double(fields[1], "close price", start);
        r.capital_millions = parse_double(fields[2], "capital", start);
        r.capital_weight = parse_double(fields[3], "capital weight", start) / 100.0;
        r.news_weight = parse_double(fields[4], "news weight", start) / 100.0;
        if (r.capital_weight < 0.0 || r.capital_weight > 1.0 || r.news_weight < 0.0 ||
            r.news_weight > 1.0)
            throw ParseError("weight CSV: weight outside [0, 100] percent", start);
        out.rows.push_back(std::move(r));
        start = line;
    }
    return out;
}

void write_weight_table_csv(std::ostream& out, const TickerWeightTable& table) {
    csv::write_record(out, {"ticker", "close_price", "capital_millions", "capital_weight_pct",
                            "news_weight_pct"});
    for (const auto& r : table.rows)
        csv::write_record(out, {r.ticker, csv::fmt(r.close_price), csv::fmt(r.capital_millions),
                                csv::fmt(r.capital_weight * 100.0),
                                csv::fmt(r.news_weight * 100.0)});
}

} // namespace hypefin::news
