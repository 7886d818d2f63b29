#include "hypefin/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hypefin/csv.hpp"
#include "hypefin/errors.hpp"

namespace hypefin::pipeline {

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open input file: " + path);
    return in;
}

std::ofstream open_output(const fs::path& path) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path);
    if (!out) throw DataError("cannot open output file: " + path.string());
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

const char* mode_name(MeasureMode m) {
    switch (m) {
    case MeasureMode::off: return "off";
    case MeasureMode::sector_reweight: return "sector_reweight";
    case MeasureMode::three_state: return "three_state";
    }
    return "off";
}

const char* target_name(Target t) {
    return t == Target::return_direction ? "return_direction" : "volatility_direction";
}

const char* model_name(Model m) { return m == Model::lda ? "lda" : "logistic"; }

} // namespace

void apply_config_line(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "schema") {
        if (value != "hypefin-config/1")
            throw ConfigError("config: unknown schema '" + value + "'");
    } else if (key == "news") {
        c.news_path = value;
    } else if (key == "prices") {
        c.prices_path = value;
    } else if (key == "weights") {
        c.weights_path = value;
    } else if (key == "out_dir") {
        c.out_dir = value;
    } else if (key == "synth_spec") {
        c.synth_spec_path = value;
    } else if (key == "dedupe_threshold") {
        c.dedupe_threshold = std::stod(value);
    } else if (key == "w_today") {
        c.params.w_today = std::stod(value);
    } else if (key == "w_past_pos_to_neg") {
        c.params.w_past_pos_to_neg = std::stod(value);
    } else if (key == "w_past_neg_to_pos") {
        c.params.w_past_neg_to_pos = std::stod(value);
    } else if (key == "w_past_no_shift") {
        c.params.w_past_no_shift = std::stod(value);
    } else if (key == "neutral_band") {
        c.params.neutral_band = std::stod(value);
    } else if (key == "memory_cutoff") {
        c.params.memory_cutoff = std::stod(value);
    } else if (key == "use_grid") {
        c.use_grid = value == "true" || value == "1";
    } else if (key == "grid_step") {
        c.grid_step = std::stod(value);
    } else if (key == "train_frac") {
        c.split.train_frac = std::stod(value);
    } else if (key == "val_frac") {
        c.split.val_frac = std::stod(value);
    } else if (key == "test_frac") {
        c.split.test_frac = std::stod(value);
    } else if (key == "split_seed") {
        c.split.seed = std::stoull(value);
    } else if (key == "split_mode") {
        if (value == "random")
            c.split.mode = forecast::SplitMode::random;
        else if (value == "chronological")
            c.split.mode = forecast::SplitMode::chronological;
        else
            throw ConfigError("config: split_mode must be random or chronological");
    } else if (key == "n_states") {
        c.n_states = std::stoi(value);
        if (c.n_states < 1) throw ConfigError("config: n_states must be >= 1");
    } else if (key == "target") {
        if (value == "return_direction")
            c.target = Target::return_direction;
        else if (value == "volatility_direction")
            c.target = Target::volatility_direction;
        else
            throw ConfigError("config: unknown target '" + value + "'");
    } else if (key == "measure_mode") {
        if (value == "off")
            c.measure_mode = MeasureMode::off;
        else if (value == "sector_reweight")
            c.measure_mode = MeasureMode::sector_reweight;
        else if (value == "three_state")
            c.measure_mode = MeasureMode::three_state;
        else
            throw ConfigError("config: unknown measure_mode '" + value + "'");
    } else if (key == "model") {
        if (value == "lda")
            c.model = Model::lda;
        else if (value == "logistic")
            c.model = Model::logistic;
        else
            throw ConfigError("config: unknown model '" + value + "'");
    } else if (key == "vol_window") {
        c.vol_window = std::stoi(value);
    } else if (key == "annualization") {
        c.annualization = std::stod(value);
    } else if (key == "hype_window") {
        c.hype_window = std::stoi(value);
    } else if (key == "hype_baseline") {
        c.hype_baseline = std::stoi(value);
    } else if (key == "hype_threshold") {
        c.hype_threshold = std::stod(value);
    } else if (key == "kappa") {
        c.kappa = std::stod(value);
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

RunConfig load_config(std::istream& in) {
    RunConfig c;
    std::string line;
    bool saw_schema = false;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected 'key = value', got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key == "schema") saw_schema = true;
        apply_config_line(c, key, value);
    }
    if (!saw_schema) throw ConfigError("config: missing schema id");
    return c;
}

news::TickerWeightTable load_weight_table(const RunConfig& config) {
    if (config.weights_path == "builtin:appendix_a") return news::appendix_a_fixture();
    auto in = open_input(config.weights_path);
    return news::parse_weight_table_csv(in);
}

news::WeightMap aggregation_weights(MeasureMode mode, const news::TickerWeightTable& table,
                                    const news::Corpus& corpus) {
    if (mode == MeasureMode::sector_reweight)
        return measure::hype_adjusted_ticker_weights(table);
    // empirical news measure: count shares over the table's universe
    const auto tickers = table.tickers();
    return news::news_count_weights(corpus, tickers);
}

news::TickerWeightTable synthetic_weight_table(const news::Corpus& corpus, int n_tickers) {
    std::vector<std::string> tickers;
    for (int i = 0; i < n_tickers; ++i) tickers.push_back(synth::ticker_name(i));
    const auto counts = news::news_count_weights(corpus, tickers);
    news::TickerWeightTable table;
    for (const auto& t : tickers) {
        news::TickerWeightRow row;
        row.ticker = t;
        row.close_price = 100.0;
        row.capital_millions = 1000.0;
        row.capital_weight = 1.0 / n_tickers;
        row.news_weight = std::max(counts.at(t), 1e-6); // keep the measure equivalent
        table.rows.push_back(row);
    }
    return table;
}

std::vector<std::pair<Date, double>>
sector_return_series(const std::map<std::string, std::vector<market::PricePoint>>& prices) {
    if (prices.empty()) throw DataError("sector_return_series: no price data");
    std::map<Date, std::pair<double, long>> acc; // date -> (sum of returns, count)
    for (const auto& [ticker, series] : prices) {
        const auto returns = market::log_returns(series);
        for (const auto& [date, r] : returns.entries) {
            acc[date].first += r;
            acc[date].second += 1;
        }
    }
    std::vector<std::pair<Date, double>> out;
    out.reserve(acc.size());
    for (const auto& [date, sum_count] : acc)
        out.emplace_back(date, sum_count.first / static_cast<double>(sum_count.second));
    return out;
}

std::vector<std::pair<Date, int>>
target_labels(const RunConfig& config,
              const std::map<std::string, std::vector<market::PricePoint>>& prices) {
    const auto returns = sector_return_series(prices);
    if (config.target == Target::return_direction)
        return market::direction_labels(returns, market::LabelMode::sign);
    market::ReturnSeries rs;
    rs.entries = returns;
    const auto vol = market::rolling_volatility(rs, config.vol_window, config.annualization);
    return market::direction_labels(vol.entries, market::LabelMode::delta);
}

forecast::Dataset align(const sentiment::SentimentSeries& series,
                        std::span<const std::pair<Date, int>> labels,
                        const std::string& indicator_name) {
    forecast::Dataset out;
    out.feature_names = {"sent", indicator_name};
    std::size_t li = 0;
    for (const auto& e : series.entries) {
        while (li < labels.size() && !(e.date < labels[li].first)) ++li;
        if (li == labels.size()) break;
        out.features.push_back({e.sent, e.sent_all});
        out.targets.push_back(labels[li].second);
        out.dates.push_back(e.date);
    }
    if (out.features.empty()) throw DataError("align: no overlapping dates");
    return out;
}

namespace {

sentiment::SentimentParams
pick_params(const RunConfig& config, std::span<const std::pair<Date, double>> daily,
            std::span<const std::pair<Date, int>> labels) {
    if (!config.use_grid) return config.params;
    const auto grid = sentiment::default_param_grid(config.grid_step);
    const auto evaluate = [&](const sentiment::SentimentSeries& series,
                              std::span<const std::pair<Date, int>> targets) {
        const auto dataset = align(series, targets, "sent_all");
        forecast::Splits s = forecast::split(dataset.select_column(1), config.split);
        const auto fit = config.model == Model::lda ? forecast::lda_fit(s.train)
                                                    : forecast::logistic_fit(s.train);
        const auto pred = config.model == Model::lda
                              ? forecast::lda_predict(fit, s.val.features)
                              : forecast::logistic_predict(fit, s.val.features);
        return forecast::accuracy(s.val.targets, pred);
    };
    return sentiment::fit_params_grid(daily, labels, grid, evaluate);
}

} // namespace

std::vector<ForecastOutcome>
run_forecast(const RunConfig& config, const news::Corpus& corpus,
             const std::map<std::string, std::vector<market::PricePoint>>& prices,
             const news::TickerWeightTable& table) {
    const auto weights = aggregation_weights(config.measure_mode, table, corpus);
    const auto daily = sentiment::daily_sentiment(corpus, weights, config.params);
    const auto labels = target_labels(config, prices);
    const auto params = pick_params(config, daily, labels);
    const auto series = sentiment::sent_all_series(daily, params);
    const auto dataset = align(series, labels, "sent_all");

    const auto kind =
        config.model == Model::lda ? forecast::ModelKind::lda : forecast::ModelKind::logistic;
    const auto sweep = forecast::random_state_sweep(dataset, config.n_states, kind, config.split);

    std::vector<ForecastOutcome> out;
    for (const auto& s : sweep) {
        ForecastOutcome o;
        o.indicator = s.indicator;
        o.mode = config.measure_mode;
        o.target = config.target;
        o.model = config.model;
        o.best_seed = s.best_seed;
        o.val_accuracy = s.best_val_accuracy;
        o.test_accuracy = s.test_accuracy;
        o.report = s.report;
        out.push_back(std::move(o));
    }
    return out;
}

int cmd_ingest(const RunConfig& config) {
    auto news_in = open_input(config.news_path);
    const auto raw = news::parse_news_csv(news_in);
    const auto deduped = news::dedupe_articles(raw, config.dedupe_threshold);

    auto prices_in = open_input(config.prices_path);
    const auto prices = market::parse_price_csv(prices_in);

    auto corpus_out = open_output(fs::path(config.out_dir) / "corpus.csv");
    news::write_news_csv(corpus_out, deduped);
    auto prices_out = open_output(fs::path(config.out_dir) / "prices.csv");
    market::write_price_csv(prices_out, prices);

    std::cout << "ingest: " << raw.articles.size() << " articles read, "
              << raw.articles.size() - deduped.articles.size() << " duplicates removed, "
              << prices.size() << " tickers priced\n";
    return 0;
}

int cmd_score(const RunConfig& config) {
    auto news_in = open_input(config.news_path);
    const auto corpus = news::dedupe_articles(news::parse_news_csv(news_in),
                                              config.dedupe_threshold);
    const auto table = load_weight_table(config);
    const auto weights = aggregation_weights(config.measure_mode, table, corpus);
    const auto daily = sentiment::daily_sentiment(corpus, weights, config.params);

    std::vector<sentiment::SentimentParams> sets;
    if (config.use_grid)
        sets = sentiment::default_param_grid(config.grid_step);
    else
        sets.push_back(config.params);

    std::vector<sentiment::SentimentSeries> scored;
    scored.reserve(sets.size());
    for (const auto& p : sets) scored.push_back(sentiment::sent_all_series(daily, p));

    auto long_out = open_output(fs::path(config.out_dir) / "sentiment.csv");
    csv::write_record(long_out, {"date", "sent", "sent_all", "param_set_id"});
    for (std::size_t s = 0; s < scored.size(); ++s)
        for (const auto& e : scored[s].entries)
            csv::write_record(long_out, {e.date.to_string(), csv::fmt(e.sent),
                                         csv::fmt(e.sent_all), std::to_string(s)});

    // wide layout: one column per parameter set
    auto wide_out = open_output(fs::path(config.out_dir) / "sentiment_table.csv");
    std::vector<std::string> header{"date", "sent"};
    for (std::size_t s = 0; s < scored.size(); ++s)
        header.push_back("param_set_" + std::to_string(s));
    csv::write_record(wide_out, header);
    for (std::size_t i = 0; i < daily.size(); ++i) {
        std::vector<std::string> row{daily[i].first.to_string(), csv::fmt(daily[i].second)};
        for (const auto& series : scored) row.push_back(csv::fmt(series.entries[i].sent_all));
        csv::write_record(wide_out, row);
    }

    std::cout << "score: " << daily.size() << " days, " << sets.size()
              << " parameter set(s), measure mode " << mode_name(config.measure_mode) << "\n";
    return 0;
}

int cmd_forecast(const RunConfig& config) {
    auto news_in = open_input(config.news_path);
    const auto corpus = news::dedupe_articles(news::parse_news_csv(news_in),
                                              config.dedupe_threshold);
    auto prices_in = open_input(config.prices_path);
    const auto prices = market::parse_price_csv(prices_in);
    const auto table = load_weight_table(config);

    // always include the unadjusted run so the comparison file has both sides
    std::vector<MeasureMode> modes{MeasureMode::off};
    if (config.measure_mode != MeasureMode::off) modes.push_back(config.measure_mode);

    std::vector<ForecastOutcome> all;
    for (MeasureMode mode : modes) {
        RunConfig c = config;
        c.measure_mode = mode;
        auto outcomes = run_forecast(c, corpus, prices, table);
        all.insert(all.end(), outcomes.begin(), outcomes.end());
    }

    for (const auto& o : all) {
        const std::string stem = "report_" + o.indicator + "_" + mode_name(o.mode);
        auto txt = open_output(fs::path(config.out_dir) / (stem + ".txt"));
        txt << forecast::format_report(o.report);
        auto csv_out = open_output(fs::path(config.out_dir) / (stem + ".csv"));
        forecast::write_report_csv(csv_out, o.report);
    }

    auto cmp = open_output(fs::path(config.out_dir) / "comparison.csv");
    csv::write_record(cmp, {"indicator", "measure_mode", "target", "model", "best_seed",
                            "val_accuracy", "test_accuracy"});
    for (const auto& o : all)
        csv::write_record(cmp, {o.indicator, mode_name(o.mode), target_name(o.target),
                                model_name(o.model), std::to_string(o.best_seed),
                                csv::fmt(o.val_accuracy), csv::fmt(o.test_accuracy)});

    if (config.measure_mode == MeasureMode::three_state) {
        // sector-level three-state construction from the label frequencies
        const auto labels = target_labels(config, prices);
        long ups = 0;
        for (const auto& [d, v] : labels) ups += v;
        const double p_up = static_cast<double>(ups) / labels.size();
        const double p_down = 1.0 - p_up;
        measure::DiscreteMeasure P{{"Up", "Level", "Down"},
                                   {p_up * 0.9, 0.1 * (p_up + p_down), p_down * 0.9}};
        const auto weights = aggregation_weights(MeasureMode::off, table, corpus);
        const auto daily = sentiment::daily_sentiment(corpus, weights, config.params);
        const auto returns = sector_return_series(prices);
        const double sent_move = daily.empty() ? 0.0 : daily.back().second - daily.front().second;
        const double price_move =
            returns.empty() ? 0.0 : returns.back().second - returns.front().second;
        const auto state = measure::classify_hype(sent_move, price_move, config.hype_threshold);
        std::map<std::string, measure::HypeState> hype{{"Up", state}};
        const auto Z = measure::build_rn_weights(P, hype, "Level", config.kappa);
        const auto Pa = measure::change_measure(P, Z);
        auto ms = open_output(fs::path(config.out_dir) / "three_state_measure.csv");
        csv::write_record(ms, {"state", "p", "z", "p_adjusted"});
        for (std::size_t i = 0; i < P.states.size(); ++i)
            csv::write_record(ms, {P.states[i], csv::fmt(P.probs[i]), csv::fmt(Z.z[i]),
                                   csv::fmt(Pa.probs[i])});
    }

    std::cout << "forecast: " << all.size() << " indicator runs, target "
              << target_name(config.target) << "\n";
    return 0;
}

int cmd_hype(const RunConfig& config) {
    auto news_in = open_input(config.news_path);
    const auto corpus = news::dedupe_articles(news::parse_news_csv(news_in),
                                              config.dedupe_threshold);
    auto prices_in = open_input(config.prices_path);
    const auto prices = market::parse_price_csv(prices_in);
    const auto table = load_weight_table(config);

    // per-ticker daily average score series
    std::map<std::string, std::map<Date, std::vector<news::NewsArticle>>> grouped;
    for (const auto& a : corpus.articles) grouped[a.ticker][a.date].push_back(a);
    std::map<std::string, std::vector<std::pair<Date, double>>> sent_series;
    for (const auto& [ticker, by_day] : grouped)
        for (const auto& [date, articles] : by_day)
            sent_series[ticker].emplace_back(
                date, sentiment::ticker_daily_score(articles, config.params));

    const auto report = measure::detect_hype(corpus, prices, sent_series, config.hype_window,
                                             config.hype_baseline, config.hype_threshold);
    std::map<std::string, double> z;
    measure::hype_adjusted_ticker_weights(table, &z);

    auto hype_out = open_output(fs::path(config.out_dir) / "hype.csv");
    measure::write_hype_csv(hype_out, report, z);

    // daily news-count series (the news-volume figure data shape)
    std::map<Date, std::map<std::string, long>> counts;
    for (const auto& a : corpus.articles) counts[a.date][a.ticker] += 1;
    auto counts_out = open_output(fs::path(config.out_dir) / "news_counts.csv");
    csv::write_record(counts_out, {"date", "ticker", "count"});
    for (const auto& [date, per_ticker] : counts)
        for (const auto& [ticker, n] : per_ticker)
            csv::write_record(counts_out, {date.to_string(), ticker, std::to_string(n)});

    std::cout << "hype: " << report.rows.size() << " tickers analyzed\n";
    return 0;
}

int cmd_synth(const RunConfig& config) {
    synth::GeneratorSpec spec;
    if (!config.synth_spec_path.empty()) {
        auto in = open_input(config.synth_spec_path);
        spec = synth::load_spec(in);
    }
    const auto data = synth::generate(spec);

    auto news_out = open_output(fs::path(config.out_dir) / "news.csv");
    news::write_news_csv(news_out, data.corpus);
    auto prices_out = open_output(fs::path(config.out_dir) / "prices.csv");
    market::write_price_csv(prices_out, data.prices);
    auto labels_out = open_output(fs::path(config.out_dir) / "labels.csv");
    csv::write_record(labels_out, {"date", "label"});
    for (const auto& [date, label] : data.labels)
        csv::write_record(labels_out, {date.to_string(), std::to_string(label)});
    auto weights_out = open_output(fs::path(config.out_dir) / "weights.csv");
    news::write_weight_table_csv(weights_out, synthetic_weight_table(data.corpus, spec.n_tickers));

    std::cout << "synth: " << data.corpus.articles.size() << " articles over " << spec.days
              << " days, " << spec.n_tickers << " tickers\n";
    return 0;
}

} // namespace hypefin::pipeline
