#include "hypefin/sentiment.hpp"

#include <algorithm>
#include <cmath>

#include "hypefin/errors.hpp"

namespace hypefin::sentiment {

double baseline_sentiment(const DailyCounts& counts) {
    if (counts.n_pos < 0 || counts.n_neg < 0 || counts.n_neutral < 0)
        throw DataError("baseline_sentiment: negative count");
    const double denom =
        static_cast<double>(counts.n_pos + counts.n_neutral - counts.n_neg + 3);
    if (denom <= 0.0)
        throw DataError("baseline_sentiment: nonpositive denominator");
    return static_cast<double>(counts.n_pos - counts.n_neg) / denom;
}

double neutral_band(double score, double band) {
    if (band < 0.0) throw DataError("neutral_band: negative band");
    return std::abs(score) < band ? 0.0 : score;
}

double source_adjust(double score, double alpha, double beta) {
    return std::clamp(alpha * score + beta, -4.0, 4.0);
}

double ticker_daily_score(std::span<const news::NewsArticle> articles,
                          const SentimentParams& params) {
    if (articles.empty())
        throw DataError("ticker_daily_score: no articles for ticker-day");
    double acc = 0.0;
    for (const auto& a : articles) {
        SourceAdjust adj;
        if (auto it = params.per_source.find(a.source); it != params.per_source.end())
            adj = it->second;
        acc += neutral_band(source_adjust(a.score, adj.alpha, adj.beta), params.neutral_band);
    }
    return acc / static_cast<double>(articles.size());
}

double weighted_daily_sentiment(const std::map<std::string, double>& ticker_scores,
                                const news::WeightMap& weights) {
    double total_weight = 0.0;
    double acc = 0.0;
    for (const auto& [ticker, w] : weights) {
        if (w < 0.0) throw DataError("weighted_daily_sentiment: negative weight");
        total_weight += w;
        if (auto it = ticker_scores.find(ticker); it != ticker_scores.end())
            acc += w * it->second;
    }
    if (total_weight > 1.0 + 1e-9)
        throw DataError("weighted_daily_sentiment: weights sum beyond 1");
    return acc;
}

double recursive_sentiment(double today, double yesterday_compound, double w_today,
                           double w_past) {
    if (w_today < 0.0 || w_past < 0.0)
        throw DataError("recursive_sentiment: negative weight");
    return w_today * today + w_past * yesterday_compound;
}

SentimentSeries sent_all_series(std::span<const std::pair<Date, double>> daily,
                                const SentimentParams& params) {
    if (!(params.memory_cutoff > 0.0))
        throw DataError("sent_all_series: memory cutoff must be positive");
    SentimentSeries out;
    out.params = params;
    out.entries.reserve(daily.size());
    double prev_sent = 0.0;
    double prev_all = 0.0;
    double carry = 1.0; // running product of fired past-weights since last reset
    for (std::size_t i = 0; i < daily.size(); ++i) {
        const auto& [date, sent] = daily[i];
        if (i > 0 && !(daily[i - 1].first < date))
            throw DataError("sent_all_series: dates not strictly increasing at " +
                            date.to_string());
        double all;
        if (i == 0) {
            all = sent; // base row is the raw Sent, identical across parameter sets
            carry = 1.0;
        } else {
            // exactly one of the three indicators fires; zeros land in no-shift
            double fired;
            double sign = +1.0;
            if (sent < 0.0 && prev_sent > 0.0) {
                fired = params.w_past_pos_to_neg;
                sign = -1.0;
            } else if (sent > 0.0 && prev_sent < 0.0) {
                fired = params.w_past_neg_to_pos;
            } else {
                fired = params.w_past_no_shift;
            }
            const double next_carry = carry * fired;
            if (next_carry < params.memory_cutoff) {
                all = params.w_today * sent; // drop history, restart
                carry = 1.0;
            } else {
                all = params.w_today * sent + sign * fired * prev_all;
                carry = next_carry;
            }
        }
        out.entries.push_back({date, sent, all});
        prev_sent = sent;
        prev_all = all;
    }
    return out;
}

std::vector<std::pair<Date, double>> daily_sentiment(const news::Corpus& corpus,
                                                     const news::WeightMap& weights,
                                                     const SentimentParams& params) {
    // ticker -> articles per day
    std::map<Date, std::map<std::string, std::vector<news::NewsArticle>>> by_day;
    for (const auto& a : corpus.articles)
        if (weights.count(a.ticker))
            by_day[a.date][a.ticker].push_back(a);

    std::vector<std::pair<Date, double>> out;
    out.reserve(by_day.size());
    for (const auto& [date, per_ticker] : by_day) {
        std::map<std::string, double> scores;
        for (const auto& [ticker, articles] : per_ticker)
            scores[ticker] = ticker_daily_score(articles, params);
        out.emplace_back(date, weighted_daily_sentiment(scores, weights));
    }
    return out;
}

SentimentParams fit_params_grid(std::span<const std::pair<Date, double>> daily,
                                std::span<const std::pair<Date, int>> targets,
                                std::span<const SentimentParams> grid,
                                const ParamEvaluator& evaluate) {
    if (grid.empty()) throw ConfigError("fit_params_grid: empty parameter grid");
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double score = evaluate(sent_all_series(daily, grid[i]), targets);
        if (score > best_score) {
            best_score = score;
            best = i;
        }
    }
    return grid[best];
}

std::vector<SentimentParams> default_param_grid(double step) {
    if (!(step > 0.0)) throw ConfigError("default_param_grid: step must be positive");
    std::vector<SentimentParams> out;
    for (double wt = step; wt <= 1.0 + 1e-12; wt += step) {
        SentimentParams memoryless;
        memoryless.w_today = wt;
        out.push_back(memoryless);
        for (int which = 0; which < 3; ++which) {
            for (double wp = step; wp <= 1.0 + 1e-12; wp += step) {
                SentimentParams p;
                p.w_today = wt;
                (which == 0 ? p.w_past_pos_to_neg
                 : which == 1 ? p.w_past_neg_to_pos
                              : p.w_past_no_shift) = wp;
                out.push_back(p);
            }
        }
    }
    return out;
}

} // namespace hypefin::sentiment
