#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypefin/date.hpp"
#include "hypefin/news_ingest.hpp"

namespace hypefin::sentiment {

struct DailyCounts {
    long n_pos = 0;
    long n_neg = 0;
    long n_neutral = 0;
};

struct SourceAdjust {
    double alpha = 1.0;
    double beta = 0.0;
};

struct SentimentParams {
    double w_today = 1.0;
    double w_past_pos_to_neg = 0.0; // fired when Sent_d < 0 and Sent_{d-1} > 0 (carried negatively)
    double w_past_neg_to_pos = 0.0; // fired when Sent_d > 0 and Sent_{d-1} < 0
    double w_past_no_shift = 0.0;   // fired when Sent_d * Sent_{d-1} >= 0
    double neutral_band = 0.05;     // open interval (-band, +band) snapped to 0
    double memory_cutoff = 0.005;   // carried weight below this resets the recursion
    std::map<std::string, SourceAdjust> per_source; // defaults to identity
};

struct SentEntry {
    Date date;
    double sent = 0.0;
    double sent_all = 0.0;
};

struct SentimentSeries {
    std::vector<SentEntry> entries;
    SentimentParams params;
};

/// Count-ratio score: (n_pos - n_neg) / (n_pos + n_neutral - n_neg + 3).
/// Throws when the denominator is nonpositive.
double baseline_sentiment(const DailyCounts& counts);

/// Scores strictly inside (-band, +band) snap to 0; boundary values kept.
double neutral_band(double score, double band);

/// alpha * score + beta, clamped to [-4, 4].
double source_adjust(double score, double alpha, double beta);

/// Per-ticker daily average: source_adjust then neutral_band per article,
/// then the plain mean. Throws on an empty article list.
double ticker_daily_score(std::span<const news::NewsArticle> articles,
                          const SentimentParams& params);

/// Sent_d = sum_i w_i * score_i. Tickers missing from `ticker_scores`
/// contribute 0; their weight is not redistributed.
double weighted_daily_sentiment(const std::map<std::string, double>& ticker_scores,
                                const news::WeightMap& weights);

/// One first-order memory step: w_today * today + w_past * yesterday.
double recursive_sentiment(double today, double yesterday_compound, double w_today,
                           double w_past);

/// The indicator-function compound score. SentAll_1 = Sent_1; afterwards the
/// fired shift weight carries SentAll_{d-1} (negatively for pos->neg shifts).
/// The running product of fired weights since the last reset is the carried
/// memory weight; once it drops below params.memory_cutoff the carry is
/// dropped and the recursion restarts at w_today * Sent_d.
SentimentSeries sent_all_series(std::span<const std::pair<Date, double>> daily,
                                const SentimentParams& params);

/// Aggregates a corpus into the dated Sent_d series under the given ticker
/// weights (only weighted tickers participate).
std::vector<std::pair<Date, double>> daily_sentiment(const news::Corpus& corpus,
                                                     const news::WeightMap& weights,
                                                     const SentimentParams& params);

/// Scores one parameter set by downstream validation accuracy; higher wins.
using ParamEvaluator = std::function<double(const SentimentSeries&,
                                            std::span<const std::pair<Date, int>>)>;

/// Argmax over the grid by evaluator score; ties keep the earliest grid entry.
SentimentParams fit_params_grid(std::span<const std::pair<Date, double>> daily,
                                std::span<const std::pair<Date, int>> targets,
                                std::span<const SentimentParams> grid,
                                const ParamEvaluator& evaluate);

/// Default weight grid: w_today and each past weight over [0, 1] at the given
/// step (past weights varied one at a time to keep the grid tractable).
std::vector<SentimentParams> default_param_grid(double step = 0.1);

} // namespace hypefin::sentiment
