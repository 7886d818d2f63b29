#include "hypefin/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hypefin/csv.hpp"
#include "hypefin/errors.hpp"
#include "hypefin/rng.hpp"

namespace hypefin::synth {

std::string ticker_name(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "SYN%02d", index);
    return buf;
}

SyntheticData generate(const GeneratorSpec& spec) {
    if (spec.n_tickers < 1 || spec.days < 2)
        throw ConfigError("generate: need n_tickers >= 1 and days >= 2");
    if (spec.base_rate < 0.0) throw ConfigError("generate: negative base rate");
    if (spec.signal_strength < 0.0 || spec.signal_strength > 1.0)
        throw ConfigError("generate: signal strength must lie in [0, 1]");

    Rng rng(spec.seed);
    SyntheticData out;

    std::vector<std::string> tickers;
    for (int i = 0; i < spec.n_tickers; ++i) tickers.push_back(ticker_name(i));
    for (const auto& t : tickers)
        out.prices[t].push_back({spec.start, spec.start_price});

    std::vector<double> day_returns; // return applied from day d to d+1

    for (int d = 0; d < spec.days; ++d) {
        const Date date = spec.start.plus_days(d);
        const double latent = rng.uniform() < 0.5 ? 1.0 : -1.0;

        double organic_sum = 0.0;
        long organic_count = 0;
        for (int i = 0; i < spec.n_tickers; ++i) {
            const long n_organic = rng.poisson(spec.base_rate);
            for (long j = 0; j < n_organic; ++j) {
                news::NewsArticle a;
                a.date = date;
                a.ticker = tickers[i];
                a.source = "wire";
                a.title = tickers[i] + " story " + std::to_string(d) + "-" + std::to_string(j);
                a.score = std::clamp(rng.normal(1.6 * latent, 0.8), -4.0, 4.0);
                organic_sum += a.score;
                ++organic_count;
                out.corpus.articles.push_back(std::move(a));
            }
            if (spec.hype && spec.hype->ticker == tickers[i] && !(date < spec.hype->from) &&
                !(spec.hype->to < date)) {
                const double extra_rate = spec.base_rate * (spec.hype->count_multiplier - 1.0);
                const long n_extra = rng.poisson(extra_rate);
                for (long j = 0; j < n_extra; ++j) {
                    news::NewsArticle a;
                    a.date = date;
                    a.ticker = tickers[i];
                    a.source = "hype";
                    a.title = tickers[i] + " chatter " + std::to_string(d) + "-" +
                              std::to_string(j);
                    a.score = std::clamp(rng.normal(0.0, 2.0), -4.0, 4.0);
                    out.corpus.articles.push_back(std::move(a));
                }
            }
        }

        // latent daily sentiment: equal-weighted mean of the organic scores
        const double sent =
            organic_count ? organic_sum / static_cast<double>(organic_count) : 0.0;
        const double driver = sent > 0.0 ? 1.0 : sent < 0.0 ? -1.0 : 1.0;
        const double follow_p = 0.5 + 0.5 * spec.signal_strength;
        const double direction = rng.uniform() < follow_p ? driver : -driver;
        const double magnitude = std::abs(rng.normal(0.01, 0.015)) + 1e-4;
        day_returns.push_back(direction * magnitude);
    }

    // identical return stream for every ticker; hype never touches prices
    for (int d = 0; d < spec.days; ++d) {
        const Date next = spec.start.plus_days(d + 1);
        for (const auto& t : tickers) {
            auto& series = out.prices[t];
            series.push_back({next, series.back().close * std::exp(day_returns[d])});
        }
    }

    for (int d = 0; d + 1 < spec.days; ++d)
        out.labels.emplace_back(spec.start.plus_days(d), day_returns[d] > 0.0 ? 1 : 0);

    return out;
}

namespace {

std::string serialize(const SyntheticData& data) {
    std::ostringstream os;
    news::write_news_csv(os, data.corpus);
    market::write_price_csv(os, data.prices);
    for (const auto& [date, label] : data.labels)
        os << date.to_string() << ',' << label << '\n';
    return os.str();
}

} // namespace

bool replay_check(const GeneratorSpec& spec) {
    return serialize(generate(spec)) == serialize(generate(spec));
}

void save_spec(std::ostream& out, const GeneratorSpec& spec) {
    out << "schema = hypefin-synth/1\n";
    out << "seed = " << spec.seed << '\n';
    out << "n_tickers = " << spec.n_tickers << '\n';
    out << "days = " << spec.days << '\n';
    out << "base_rate = " << csv::fmt(spec.base_rate) << '\n';
    out << "signal_strength = " << csv::fmt(spec.signal_strength) << '\n';
    out << "start = " << spec.start.to_string() << '\n';
    out << "start_price = " << csv::fmt(spec.start_price) << '\n';
    out << "w_today = " << csv::fmt(spec.params.w_today) << '\n';
    out << "w_past_pos_to_neg = " << csv::fmt(spec.params.w_past_pos_to_neg) << '\n';
    out << "w_past_neg_to_pos = " << csv::fmt(spec.params.w_past_neg_to_pos) << '\n';
    out << "w_past_no_shift = " << csv::fmt(spec.params.w_past_no_shift) << '\n';
    out << "neutral_band = " << csv::fmt(spec.params.neutral_band) << '\n';
    out << "memory_cutoff = " << csv::fmt(spec.params.memory_cutoff) << '\n';
    if (spec.hype) {
        out << "hype_ticker = " << spec.hype->ticker << '\n';
        out << "hype_from = " << spec.hype->from.to_string() << '\n';
        out << "hype_to = " << spec.hype->to.to_string() << '\n';
        out << "hype_multiplier = " << csv::fmt(spec.hype->count_multiplier) << '\n';
    }
}

GeneratorSpec load_spec(std::istream& in) {
    GeneratorSpec spec;
    HypeInjection hype;
    bool has_hype = false;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("synth spec: expected 'key = value'", lineno);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "schema") {
            if (val != "hypefin-synth/1")
                throw ParseError("synth spec: unknown schema '" + val + "'", lineno);
        } else if (key == "seed") {
            spec.seed = std::stoull(val);
        } else if (key == "n_tickers") {
            spec.n_tickers = std::stoi(val);
        } else if (key == "days") {
            spec.days = std::stoi(val);
        } else if (key == "base_rate") {
            spec.base_rate = std::stod(val);
        } else if (key == "signal_strength") {
            spec.signal_strength = std::stod(val);
        } else if (key == "start") {
            spec.start = Date::parse(val);
        } else if (key == "start_price") {
            spec.start_price = std::stod(val);
        } else if (key == "w_today") {
            spec.params.w_today = std::stod(val);
        } else if (key == "w_past_pos_to_neg") {
            spec.params.w_past_pos_to_neg = std::stod(val);
        } else if (key == "w_past_neg_to_pos") {
            spec.params.w_past_neg_to_pos = std::stod(val);
        } else if (key == "w_past_no_shift") {
            spec.params.w_past_no_shift = std::stod(val);
        } else if (key == "neutral_band") {
            spec.params.neutral_band = std::stod(val);
        } else if (key == "memory_cutoff") {
            spec.params.memory_cutoff = std::stod(val);
        } else if (key == "hype_ticker") {
            hype.ticker = val;
            has_hype = true;
        } else if (key == "hype_from") {
            hype.from = Date::parse(val);
            has_hype = true;
        } else if (key == "hype_to") {
            hype.to = Date::parse(val);
            has_hype = true;
        } else if (key == "hype_multiplier") {
            hype.count_multiplier = std::stod(val);
            has_hype = true;
        } else {
            throw ParseError("synth spec: unknown key '" + key + "'", lineno);
        }
    }
    if (has_hype) spec.hype = hype;
    return spec;
}

} // namespace hypefin::synth
