#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "hypefin/market_data.hpp"
#include "hypefin/news_ingest.hpp"

namespace hypefin::measure {

/// Probability vector over named states; nonnegative, sums to 1.
struct DiscreteMeasure {
    std::vector<std::string> states;
    std::vector<double> probs;

    void validate(double tol = 1e-12) const; // throws DataError
    double prob_of(const std::string& state) const;
};

/// Radon-Nikodym weights z = dP^a/dP; strictly positive, E_P[z] = 1 once
/// finalized by build_rn_weights.
struct RNWeights {
    std::vector<std::string> states;
    std::vector<double> z;
};

enum class HypeState { overhyped, neutral, underhyped };

std::string to_string(HypeState s);

struct HypeRow {
    std::string ticker;
    double news_spike_ratio = 0.0; // window mean count / baseline mean count
    double sentiment_move = 0.0;   // window-over-baseline relative change
    double price_move = 0.0;
    HypeState state = HypeState::neutral;
};

struct HypeReport {
    std::vector<HypeRow> rows;
    int window = 5;
    int baseline = 60;
    double threshold = 0.05;
};

/// overhyped iff sentiment_move - price_move > threshold; underhyped iff
/// below -threshold.
HypeState classify_hype(double sentiment_move, double price_move, double threshold);

/// Trailing `window` days against the trailing `baseline` days of each
/// ticker's data. Spike ratio compares mean daily news counts; sentiment and
/// price moves are window-over-baseline relative changes.
HypeReport detect_hype(
    const news::Corpus& corpus,
    const std::map<std::string, std::vector<market::PricePoint>>& prices,
    const std::map<std::string, std::vector<std::pair<Date, double>>>& sentiment,
    int window = 5, int baseline = 60, double threshold = 0.05);

/// Overhyped states get z = 1 - kappa, underhyped z = 1 + kappa, neutral
/// non-level states z = 1; the level state's z is solved so E_P[Z] = 1.
RNWeights build_rn_weights(const DiscreteMeasure& P,
                           const std::map<std::string, HypeState>& hype,
                           const std::string& level_state, double kappa = 0.2);

/// P^a(w_i) = z_i * P(w_i). Requires E_P[Z] = 1 within 1e-9.
DiscreteMeasure change_measure(const DiscreteMeasure& P, const RNWeights& Z);

double expectation(const DiscreteMeasure& measure,
                   const std::map<std::string, double>& X);

/// Two-epoch conditional expectation under P^a:
/// (1/Z_s) * E_P[X_t * Z_t | F(s)], with P_conditional encoding F(s).
double conditional_expectation_adjusted(const std::map<std::string, double>& X_t,
                                        const RNWeights& Z_t, double Z_s,
                                        const DiscreteMeasure& P_conditional);

/// Sector reweighting: z_i = capital_weight_i / news_weight_i; the induced
/// adjusted weights are the capital weights renormalized to sum 1. One
/// admissible construction of the adjusted measure, not claimed unique.
std::map<std::string, double>
hype_adjusted_ticker_weights(const news::TickerWeightTable& table,
                             std::map<std::string, double>* z_out = nullptr);

/// CSV export: `ticker,news_spike_ratio,sentiment_move,price_move,hype_state,z`.
void write_hype_csv(std::ostream& out, const HypeReport& report,
                    const std::map<std::string, double>& z);

} // namespace hypefin::measure
