#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hypefin/date.hpp"
#include "hypefin/market_data.hpp"
#include "hypefin/news_ingest.hpp"
#include "hypefin/sentiment.hpp"

namespace hypefin::synth {

struct HypeInjection {
    std::string ticker;
    Date from;
    Date to;
    double count_multiplier = 5.0; // extra article rate = base_rate * (mult - 1)
};

struct GeneratorSpec {
    std::uint64_t seed = 42;
    int n_tickers = 5;
    int days = 120;
    double base_rate = 3.0;           // expected organic articles per ticker-day
    sentiment::SentimentParams params;
    double signal_strength = 0.8;     // P(next-day direction follows Sent_d) = 0.5 + 0.5 * s
    std::optional<HypeInjection> hype;
    Date start{2024, 1, 2};
    double start_price = 100.0;
};

struct SyntheticData {
    news::Corpus corpus;
    std::map<std::string, std::vector<market::PricePoint>> prices;
    // label at day d: 1 iff the day d+1 return is positive
    std::vector<std::pair<Date, int>> labels;
};

/// Deterministic generation (single mt19937_64 stream per spec; see rng.hpp
/// for the fixed sampling algorithms).
///
/// Per day: a latent direction drives organic article scores for every
/// ticker; the next-day return follows the sign of the equal-weighted
/// aggregate of those organic scores with probability 0.5 + 0.5 * signal.
/// Hype injection adds extra articles on one ticker whose scores are
/// zero-centered chatter, uncorrelated with the latent direction, leaving
/// the price process untouched. That inflates the ticker's news-count
/// weight without moving its capital weight.
SyntheticData generate(const GeneratorSpec& spec);

/// Generates twice and compares serialized bytes.
bool replay_check(const GeneratorSpec& spec);

std::string ticker_name(int index); // "SYN00", "SYN01", ...

/// Flat key-value round trip (same format the CLI config uses).
void save_spec(std::ostream& out, const GeneratorSpec& spec);
GeneratorSpec load_spec(std::istream& in);

} // namespace hypefin::synth
