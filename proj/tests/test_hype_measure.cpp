#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hypefin/errors.hpp"
#include "hypefin/hype_measure.hpp"
#include "hypefin/rng.hpp"

using namespace hypefin;
using namespace hypefin::measure;

namespace {

DiscreteMeasure random_measure(Rng& rng, std::size_t n) {
    DiscreteMeasure m;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m.states.push_back("s" + std::to_string(i));
        m.probs.push_back(0.05 + rng.uniform());
        total += m.probs.back();
    }
    for (double& p : m.probs) p /= total;
    return m;
}

} // namespace

TEST_CASE("measure validation") {
    DiscreteMeasure ok{{"a", "b"}, {0.25, 0.75}};
    ok.validate();
    CHECK(ok.prob_of("b") == doctest::Approx(0.75));
    CHECK_THROWS_AS(ok.prob_of("c"), DataError);

    DiscreteMeasure negative{{"a", "b"}, {-0.1, 1.1}};
    CHECK_THROWS_AS(negative.validate(), DataError);
    DiscreteMeasure short_sum{{"a", "b"}, {0.2, 0.2}};
    CHECK_THROWS_AS(short_sum.validate(), DataError);
    DiscreteMeasure mismatched{{"a"}, {0.5, 0.5}};
    CHECK_THROWS_AS(mismatched.validate(), DataError);
    CHECK_THROWS_AS(DiscreteMeasure{}.validate(), DataError);
}

TEST_CASE("hype classification") {
    CHECK(classify_hype(0.20, 0.10, 0.05) == HypeState::overhyped);
    CHECK(classify_hype(0.10, 0.20, 0.05) == HypeState::underhyped);
    CHECK(classify_hype(0.12, 0.10, 0.05) == HypeState::neutral);
    CHECK(classify_hype(0.0, 0.0, 0.05) == HypeState::neutral);
    CHECK_THROWS_AS(classify_hype(0.1, 0.0, 0.0), DataError);
    CHECK(to_string(HypeState::overhyped) == "overhyped");
}

TEST_CASE("Radon-Nikodym weights: worked three-state example") {
    DiscreteMeasure P{{"up", "level", "down"}, {0.3, 0.4, 0.3}};
    std::map<std::string, HypeState> hype{{"up", HypeState::overhyped},
                                          {"down", HypeState::underhyped}};
    auto Z = build_rn_weights(P, hype, "level", 0.2);
    CHECK(Z.z[0] == doctest::Approx(0.8));
    CHECK(Z.z[1] == doctest::Approx(1.0)); // 0.3*0.8 + 0.3*1.2 = 0.6, (1-0.6)/0.4
    CHECK(Z.z[2] == doctest::Approx(1.2));

    auto Pa = change_measure(P, Z);
    Pa.validate(1e-12);
    CHECK(Pa.probs[0] == doctest::Approx(0.24));
    CHECK(Pa.probs[1] == doctest::Approx(0.40));
    CHECK(Pa.probs[2] == doctest::Approx(0.36));
}

TEST_CASE("Radon-Nikodym weights: errors") {
    DiscreteMeasure P{{"a", "b"}, {0.5, 0.5}};
    CHECK_THROWS_AS(build_rn_weights(P, {}, "missing", 0.2), DataError);
    CHECK_THROWS_AS(build_rn_weights(P, {}, "a", 0.0), DataError);
    CHECK_THROWS_AS(build_rn_weights(P, {}, "a", 1.0), DataError);

    // level state with zero mass cannot absorb the imbalance
    DiscreteMeasure degenerate{{"a", "b"}, {1.0, 0.0}};
    std::map<std::string, HypeState> hype{{"a", HypeState::overhyped}};
    CHECK_THROWS_AS(build_rn_weights(degenerate, hype, "b", 0.2), DataError);
}

TEST_CASE("change of measure preserves total mass and inverts") {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        auto P = random_measure(rng, 3 + rng.below(5));
        std::map<std::string, HypeState> hype;
        for (std::size_t i = 1; i < P.states.size(); ++i)
            hype[P.states[i]] = i % 2 ? HypeState::overhyped : HypeState::underhyped;
        RNWeights Z;
        try {
            Z = build_rn_weights(P, hype, P.states[0], 0.15);
        } catch (const DataError&) {
            continue; // level state too small to balance this draw
        }

        double ez = 0.0;
        for (std::size_t i = 0; i < P.probs.size(); ++i) ez += P.probs[i] * Z.z[i];
        CHECK(ez == doctest::Approx(1.0).epsilon(1e-12));

        auto Pa = change_measure(P, Z);
        Pa.validate(1e-9);

        // inverse weights 1/z take P^a back to P
        RNWeights inverse;
        inverse.states = Z.states;
        for (double z : Z.z) inverse.z.push_back(1.0 / z);
        auto back = change_measure(Pa, inverse);
        for (std::size_t i = 0; i < P.probs.size(); ++i)
            CHECK(back.probs[i] == doctest::Approx(P.probs[i]).epsilon(1e-12));
    }
}

TEST_CASE("adjusted expectation equals E_P[XZ]") {
    Rng rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        auto P = random_measure(rng, 4);
        std::map<std::string, HypeState> hype{{P.states[1], HypeState::overhyped},
                                              {P.states[2], HypeState::underhyped}};
        RNWeights Z;
        try {
            Z = build_rn_weights(P, hype, P.states[0], 0.2);
        } catch (const DataError&) {
            continue;
        }
        auto Pa = change_measure(P, Z);

        std::map<std::string, double> X, XZ;
        for (std::size_t i = 0; i < P.states.size(); ++i) {
            X[P.states[i]] = rng.normal(0.0, 2.0);
            XZ[P.states[i]] = X[P.states[i]] * Z.z[i];
        }
        CHECK(expectation(Pa, X) == doctest::Approx(expectation(P, XZ)).epsilon(1e-12));
    }
}

TEST_CASE("two-epoch conditional expectation on a four-leaf tree") {
    // two coin flips; leaves named by the pair of moves
    DiscreteMeasure leaves{{"uu", "ud", "du", "dd"}, {0.36, 0.24, 0.24, 0.16}};
    std::map<std::string, HypeState> hype{{"uu", HypeState::overhyped},
                                          {"dd", HypeState::underhyped}};
    auto Z = build_rn_weights(leaves, hype, "ud", 0.25);
    std::map<std::string, double> X{{"uu", 4.0}, {"ud", 1.0}, {"du", -1.0}, {"dd", -3.0}};

    // condition on the first move being up: F(s) knows {uu, ud} vs {du, dd}
    DiscreteMeasure p_given_up{{"uu", "ud", "du", "dd"}, {0.6, 0.4, 0.0, 0.0}};
    const double z_up = 0.6 * Z.z[0] + 0.4 * Z.z[1]; // E_P[Z_t | first = up]

    const double got = conditional_expectation_adjusted(X, Z, z_up, p_given_up);

    // oracle: renormalize the adjusted leaf measure over {uu, ud} directly
    auto Pa = change_measure(leaves, Z);
    const double mass = Pa.probs[0] + Pa.probs[1];
    const double want = (Pa.probs[0] * X["uu"] + Pa.probs[1] * X["ud"]) / mass;
    CHECK(got == doctest::Approx(want).epsilon(1e-12));

    CHECK_THROWS_AS(conditional_expectation_adjusted(X, Z, 0.0, p_given_up), DataError);
}

TEST_CASE("conditional expectation reduces to the unconditional one at the root") {
    Rng rng(47);
    auto P = random_measure(rng, 5);
    std::map<std::string, HypeState> hype{{P.states[2], HypeState::overhyped}};
    auto Z = build_rn_weights(P, hype, P.states[0], 0.3);
    std::map<std::string, double> X;
    for (const auto& s : P.states) X[s] = rng.normal(0.0, 1.0);
    // at the root F(s) is trivial and Z_s = E_P[Z] = 1
    const double via_conditional = conditional_expectation_adjusted(X, Z, 1.0, P);
    CHECK(via_conditional == doctest::Approx(expectation(change_measure(P, Z), X)).epsilon(1e-12));
}

TEST_CASE("sector reweighting from the ticker table") {
    auto table = news::appendix_a_fixture();
    std::map<std::string, double> z;
    auto adjusted = hype_adjusted_ticker_weights(table, &z);

    CHECK(z["NVDA.OQ"] == doctest::Approx(0.0866 / 0.2452).epsilon(1e-6)); // ~0.3532
    CHECK(z["NVDA.OQ"] < 1.0);  // overhyped: news share far above capital share

    double total = 0.0;
    for (const auto& [t, w] : adjusted) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(adjusted["NVDA.OQ"] == doctest::Approx(0.0866 / 0.9999).epsilon(1e-4));

    news::TickerWeightTable bad = table;
    bad.rows[0].news_weight = 0.0;
    CHECK_THROWS_AS(hype_adjusted_ticker_weights(bad), DataError);
    CHECK_THROWS_AS(hype_adjusted_ticker_weights(news::TickerWeightTable{}), DataError);
}

TEST_CASE("hype detection on a constructed spike") {
    const Date d0{2024, 3, 1};
    news::Corpus corpus;
    std::map<std::string, std::vector<market::PricePoint>> prices;
    std::map<std::string, std::vector<std::pair<Date, double>>> sentiment;

    for (int i = 0; i <= 20; ++i) {
        const Date d = d0.plus_days(i);
        const int n_articles = i >= 16 ? 3 : 1;
        for (int j = 0; j < n_articles; ++j)
            corpus.articles.push_back({d, "A", "wire", "story", 0.5});
        prices["A"].push_back({d, i == 20 ? 110.0 : 100.0});
        sentiment["A"].emplace_back(d, i >= 16 ? 0.2 : 0.1);
    }

    auto report = detect_hype(corpus, prices, sentiment, 5, 20, 0.05);
    REQUIRE(report.rows.size() == 1);
    const auto& row = report.rows[0];
    // window mean 3/day over baseline mean 30/20 days
    CHECK(row.news_spike_ratio == doctest::Approx(2.0));
    // window mean 0.2 vs baseline mean 0.125
    CHECK(row.sentiment_move == doctest::Approx(0.6));
    CHECK(row.price_move == doctest::Approx(0.1));
    CHECK(row.state == HypeState::overhyped);

    // flat sentiment with the same price pop flips the call
    for (auto& [d, v] : sentiment["A"]) v = 0.1;
    auto flipped = detect_hype(corpus, prices, sentiment, 5, 20, 0.05);
    CHECK(flipped.rows[0].sentiment_move == doctest::Approx(0.0));
    CHECK(flipped.rows[0].state == HypeState::underhyped);

    CHECK_THROWS_AS(detect_hype(corpus, prices, sentiment, 5, 4, 0.05), DataError);
    CHECK_THROWS_AS(detect_hype(corpus, prices, sentiment, 0, 20, 0.05), DataError);
    std::map<std::string, std::vector<market::PricePoint>> short_prices{
        {"A", {prices["A"].begin(), prices["A"].begin() + 3}}};
    CHECK_THROWS_AS(detect_hype(corpus, short_prices, sentiment, 5, 20, 0.05), DataError);
}

TEST_CASE("hype CSV export") {
    HypeReport report;
    report.rows.push_back({"NVDA.OQ", 2.0, 0.6, 0.1, HypeState::overhyped});
    std::ostringstream os;
    write_hype_csv(os, report, {{"NVDA.OQ", 0.3532}});
    CHECK(os.str() ==
          "ticker,news_spike_ratio,sentiment_move,price_move,hype_state,z\n"
          "NVDA.OQ,2,0.6,0.1,overhyped,0.3532\n");
}
