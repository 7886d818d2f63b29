#include "hypefin/hype_measure.hpp"

#include <algorithm>
#include <cmath>

#include "hypefin/csv.hpp"
#include "hypefin/errors.hpp"
#include "hypefin/kernels.hpp"

namespace hypefin::measure {

void DiscreteMeasure::validate(double tol) const {
    if (states.size() != probs.size())
        throw DataError("measure: state/probability length mismatch");
    if (states.empty()) throw DataError("measure: empty state space");
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw DataError("measure: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > tol)
        throw DataError("measure: probabilities sum to " + csv::fmt(total));
}

double DiscreteMeasure::prob_of(const std::string& state) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == state) return probs[i];
    throw DataError("measure: unknown state '" + state + "'");
}

std::string to_string(HypeState s) {
    switch (s) {
    case HypeState::overhyped: return "overhyped";
    case HypeState::underhyped: return "underhyped";
    case HypeState::neutral: return "neutral";
    }
    return "neutral";
}

HypeState classify_hype(double sentiment_move, double price_move, double threshold) {
    if (!(threshold > 0.0)) throw DataError("classify_hype: threshold must be positive");
    const double gap = sentiment_move - price_move;
    if (gap > threshold) return HypeState::overhyped;
    if (gap < -threshold) return HypeState::underhyped;
    return HypeState::neutral;
}

namespace {

// Mean of the values whose dates fall in [from, to], 0 when none.
double mean_in_range(const std::vector<std::pair<Date, double>>& series, Date from, Date to) {
    double acc = 0.0;
    std::size_t n = 0;
    for (const auto& [d, v] : series)
        if (!(d < from) && !(to < d)) {
            acc += v;
            ++n;
        }
    return n ? acc / static_cast<double>(n) : 0.0;
}

double relative_change(double window_mean, double baseline_mean) {
    if (baseline_mean == 0.0) return window_mean == 0.0 ? 0.0 : window_mean / 1e-9;
    return (window_mean - baseline_mean) / std::abs(baseline_mean);
}

} // namespace

HypeReport detect_hype(
    const news::Corpus& corpus,
    const std::map<std::string, std::vector<market::PricePoint>>& prices,
    const std::map<std::string, std::vector<std::pair<Date, double>>>& sentiment,
    int window, int baseline, double threshold) {
    if (window < 1 || baseline < window)
        throw DataError("detect_hype: require baseline >= window >= 1");
    if (!(threshold > 0.0)) throw DataError("detect_hype: threshold must be positive");

    // daily news counts per ticker
    std::map<std::string, std::map<Date, double>> counts;
    for (const auto& a : corpus.articles) counts[a.ticker][a.date] += 1.0;

    HypeReport report;
    report.window = window;
    report.baseline = baseline;
    report.threshold = threshold;

    for (const auto& [ticker, price_series] : prices) {
        if (price_series.size() < static_cast<std::size_t>(window) + 1)
            throw DataError("detect_hype: price series shorter than window for " + ticker);
        const Date end = price_series.back().date;
        const Date win_from = end.plus_days(-(window - 1));
        const Date base_from = end.plus_days(-(baseline - 1));

        HypeRow row;
        row.ticker = ticker;

        // spike ratio over calendar-day means; empty baseline -> 0
        double win_count = 0.0, base_count = 0.0;
        if (auto it = counts.find(ticker); it != counts.end())
            for (const auto& [d, c] : it->second) {
                if (!(d < base_from) && !(end < d)) base_count += c;
                if (!(d < win_from) && !(end < d)) win_count += c;
            }
        const double win_mean = win_count / window;
        const double base_mean = base_count / baseline;
        row.news_spike_ratio = base_mean > 0.0 ? win_mean / base_mean : 0.0;

        // price move across the window
        const auto& last = price_series.back();
        const auto& anchor = price_series[price_series.size() - 1 - window];
        row.price_move = last.close / anchor.close - 1.0;

        if (auto it = sentiment.find(ticker); it != sentiment.end() && !it->second.empty()) {
            const double sw = mean_in_range(it->second, win_from, end);
            const double sb = mean_in_range(it->second, base_from, end);
            row.sentiment_move = relative_change(sw, sb);
        }

        row.state = classify_hype(row.sentiment_move, row.price_move, threshold);
        report.rows.push_back(std::move(row));
    }
    return report;
}

RNWeights build_rn_weights(const DiscreteMeasure& P,
                           const std::map<std::string, HypeState>& hype,
                           const std::string& level_state, double kappa) {
    P.validate(1e-9);
    if (!(kappa > 0.0 && kappa < 1.0))
        throw DataError("build_rn_weights: kappa must lie in (0, 1)");

    RNWeights out;
    out.states = P.states;
    out.z.assign(P.states.size(), 1.0);

    std::size_t level = P.states.size();
    double off_level_mass = 0.0;
    for (std::size_t i = 0; i < P.states.size(); ++i) {
        if (P.states[i] == level_state) {
            level = i;
            continue;
        }
        HypeState h = HypeState::neutral;
        if (auto it = hype.find(P.states[i]); it != hype.end()) h = it->second;
        out.z[i] = h == HypeState::overhyped   ? 1.0 - kappa
                   : h == HypeState::underhyped ? 1.0 + kappa
                                                : 1.0;
        off_level_mass += P.probs[i] * out.z[i];
    }
    if (level == P.states.size())
        throw DataError("build_rn_weights: level state '" + level_state + "' not found");
    if (P.probs[level] <= 0.0)
        throw DataError("build_rn_weights: level state has zero probability, cannot balance");

    out.z[level] = (1.0 - off_level_mass) / P.probs[level];
    if (out.z[level] <= 0.0)
        throw DataError("build_rn_weights: solved level weight is nonpositive, "
                        "equivalence violated");
    return out;
}

DiscreteMeasure change_measure(const DiscreteMeasure& P, const RNWeights& Z) {
    P.validate(1e-9);
    if (P.states != Z.states)
        throw DataError("change_measure: state lists misaligned");
    const double ez = kernels::dot(P.probs, Z.z);
    if (std::abs(ez - 1.0) > 1e-9)
        throw DataError("change_measure: E_P[Z] = " + csv::fmt(ez) + ", weights unnormalized");
    DiscreteMeasure out;
    out.states = P.states;
    out.probs.resize(P.probs.size());
    for (std::size_t i = 0; i < P.probs.size(); ++i) {
        if (Z.z[i] <= 0.0)
            throw DataError("change_measure: nonpositive weight breaks equivalence");
        out.probs[i] = Z.z[i] * P.probs[i];
    }
    return out;
}

double expectation(const DiscreteMeasure& measure, const std::map<std::string, double>& X) {
    measure.validate(1e-9);
    std::vector<double> vals(measure.states.size());
    for (std::size_t i = 0; i < measure.states.size(); ++i) {
        auto it = X.find(measure.states[i]);
        if (it == X.end())
            throw DataError("expectation: no value for state '" + measure.states[i] + "'");
        vals[i] = it->second;
    }
    return kernels::dot(measure.probs, vals);
}

double conditional_expectation_adjusted(const std::map<std::string, double>& X_t,
                                        const RNWeights& Z_t, double Z_s,
                                        const DiscreteMeasure& P_conditional) {
    if (Z_s <= 0.0)
        throw DataError("conditional_expectation_adjusted: Z_s must be positive");
    if (P_conditional.states != Z_t.states)
        throw DataError("conditional_expectation_adjusted: state lists misaligned");
    std::map<std::string, double> weighted;
    for (std::size_t i = 0; i < Z_t.states.size(); ++i) {
        auto it = X_t.find(Z_t.states[i]);
        if (it == X_t.end())
            throw DataError("conditional_expectation_adjusted: no value for state '" +
                            Z_t.states[i] + "'");
        weighted[Z_t.states[i]] = it->second * Z_t.z[i];
    }
    return expectation(P_conditional, weighted) / Z_s;
}

std::map<std::string, double>
hype_adjusted_ticker_weights(const news::TickerWeightTable& table,
                             std::map<std::string, double>* z_out) {
    double capital_total = 0.0;
    for (const auto& r : table.rows) {
        if (r.news_weight <= 0.0)
            throw DataError("hype_adjusted_ticker_weights: zero news weight for " + r.ticker +
                            " breaks equivalence");
        if (r.capital_weight <= 0.0)
            throw DataError("hype_adjusted_ticker_weights: zero capital weight for " + r.ticker);
        capital_total += r.capital_weight;
    }
    if (capital_total <= 0.0)
        throw DataError("hype_adjusted_ticker_weights: empty table");

    std::map<std::string, double> adjusted;
    for (const auto& r : table.rows) {
        if (z_out) (*z_out)[r.ticker] = r.capital_weight / r.news_weight;
        adjusted[r.ticker] = r.capital_weight / capital_total;
    }
    return adjusted;
}

void write_hype_csv(std::ostream& out, const HypeReport& report,
                    const std::map<std::string, double>& z) {
    csv::write_record(out, {"ticker", "news_spike_ratio", "sentiment_move", "price_move",
                            "hype_state", "z"});
    for (const auto& row : report.rows) {
        double zi = 1.0;
        if (auto it = z.find(row.ticker); it != z.end()) zi = it->second;
        csv::write_record(out, {row.ticker, csv::fmt(row.news_spike_ratio),
                                csv::fmt(row.sentiment_move), csv::fmt(row.price_move),
                                to_string(row.state), csv::fmt(zi)});
    }
}

} // namespace hypefin::measure
