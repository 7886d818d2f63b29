#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypefin/forecasting.hpp"
#include "hypefin/hype_measure.hpp"
#include "hypefin/market_data.hpp"
#include "hypefin/news_ingest.hpp"
#include "hypefin/sentiment.hpp"
#include "hypefin/synthetic.hpp"

namespace hypefin::pipeline {

enum class Target { return_direction, volatility_direction };
enum class MeasureMode { off, sector_reweight, three_state };
enum class Model { lda, logistic };

struct RunConfig {
    std::string news_path;
    std::string prices_path;
    std::string weights_path = "builtin:appendix_a"; // or a weight-table CSV
    std::string out_dir = ".";
    std::string synth_spec_path; // for `synth`

    double dedupe_threshold = 0.9;
    sentiment::SentimentParams params;
    bool use_grid = false;
    double grid_step = 0.1;

    forecast::SplitSpec split;
    int n_states = 10;
    Target target = Target::volatility_direction;
    MeasureMode measure_mode = MeasureMode::off;
    Model model = Model::lda;

    int vol_window = 5;
    double annualization = 252.0;
    int hype_window = 5;
    int hype_baseline = 60;
    double hype_threshold = 0.05;
    double kappa = 0.2;
};

/// Flat key = value file, schema id `hypefin-config/1`. Unknown keys reject.
RunConfig load_config(std::istream& in);
void apply_config_line(RunConfig& config, const std::string& key, const std::string& value);

news::TickerWeightTable load_weight_table(const RunConfig& config);

/// Aggregation weights for the configured measure mode: the empirical
/// news-count measure when off, capital weights (the adjusted measure) when
/// reweighted.
news::WeightMap aggregation_weights(MeasureMode mode, const news::TickerWeightTable& table,
                                    const news::Corpus& corpus);

/// Equal-capital weight table for a synthetic universe; news weights are the
/// empirical counts.
news::TickerWeightTable synthetic_weight_table(const news::Corpus& corpus, int n_tickers);

/// Sector-level target series from per-ticker prices (equal-weighted mean of
/// per-ticker log returns; volatility over the rolling window).
std::vector<std::pair<Date, double>>
sector_return_series(const std::map<std::string, std::vector<market::PricePoint>>& prices);

std::vector<std::pair<Date, int>>
target_labels(const RunConfig& config,
              const std::map<std::string, std::vector<market::PricePoint>>& prices);

/// Pairs each sentiment date with the next label strictly after it.
forecast::Dataset align(const sentiment::SentimentSeries& series,
                        std::span<const std::pair<Date, int>> labels,
                        const std::string& indicator_name);

struct ForecastOutcome {
    std::string indicator;
    MeasureMode mode;
    Target target;
    Model model;
    std::uint64_t best_seed = 0;
    double val_accuracy = 0.0;
    double test_accuracy = 0.0;
    forecast::ClassificationReport report;
};

/// Score + sweep for one measure mode; shared by the CLI and the tests.
std::vector<ForecastOutcome>
run_forecast(const RunConfig& config, const news::Corpus& corpus,
             const std::map<std::string, std::vector<market::PricePoint>>& prices,
             const news::TickerWeightTable& table);

// CLI entry points; return process exit codes (0 ok, 1 usage, 2 data).
int cmd_ingest(const RunConfig& config);
int cmd_score(const RunConfig& config);
int cmd_forecast(const RunConfig& config);
int cmd_hype(const RunConfig& config);
int cmd_synth(const RunConfig& config);

} // namespace hypefin::pipeline
