#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "hypefin/errors.hpp"
#include "hypefin/news_ingest.hpp"

using namespace hypefin;
using namespace hypefin::news;

namespace {

NewsArticle article(const char* date, const char* ticker, const char* title,
                    double score = 1.0) {
    return {Date::parse(date), ticker, "wire", title, score};
}

} // namespace

TEST_CASE("parse news CSV") {
    std::istringstream in(
        "date,ticker,source,title,score\n"
        "2024-05-01,NVDA.OQ,wire,\"NVDA beats, again\",2.5\n"
        "2024-05-01,INTC.OQ,blog,Intel update,-0.25\n"
        "2024-05-02,NVDA.OQ,wire,Chips rally,0\n");
    auto corpus = parse_news_csv(in);
    REQUIRE(corpus.articles.size() == 3);
    CHECK(corpus.articles[0].title == "NVDA beats, again");
    CHECK(corpus.articles[1].score == doctest::Approx(-0.25));
    auto range = corpus.date_range();
    REQUIRE(range.has_value());
    CHECK(range->first == Date{2024, 5, 1});
    CHECK(range->second == Date{2024, 5, 2});
}

TEST_CASE("parse news CSV rejects bad rows") {
    std::istringstream out_of_range(
        "date,ticker,source,title,score\n"
        "2024-05-01,NVDA.OQ,wire,too sunny,5.0\n");
    CHECK_THROWS_WITH_AS(parse_news_csv(out_of_range),
                         "news CSV: score outside [-4, +4] (line 2)", ParseError);

    std::istringstream short_row("date,ticker,source,title,score\n2024-05-01,NVDA.OQ,wire\n");
    CHECK_THROWS_AS(parse_news_csv(short_row), ParseError);

    std::istringstream header_only("date,ticker,source,title,score\n");
    auto corpus = parse_news_csv(header_only);
    CHECK(corpus.articles.empty());
    CHECK(!corpus.date_range().has_value());
}

TEST_CASE("news CSV round trip is bit exact") {
    Corpus corpus;
    corpus.articles = {
        article("2024-05-01", "NVDA.OQ", "title with \"quotes\" and, commas", 1.25),
        article("2024-05-02", "INTC.OQ", "plain title", -3.5),
    };
    std::ostringstream first;
    write_news_csv(first, corpus);
    std::istringstream back(first.str());
    auto reparsed = parse_news_csv(back);
    std::ostringstream second;
    write_news_csv(second, reparsed);
    CHECK(first.str() == second.str());
    CHECK(reparsed.articles == corpus.articles);
}

TEST_CASE("dedupe articles") {
    Corpus corpus;
    corpus.articles = {
        article("2024-05-01", "NVDA.OQ", "NVDA beats earnings"),
        article("2024-05-01", "NVDA.OQ", "NVDA beats earnings"),
    };
    CHECK(dedupe_articles(corpus, 0.9).articles.size() == 1);

    Corpus different_days;
    different_days.articles = {
        article("2024-05-01", "NVDA.OQ", "NVDA beats earnings"),
        article("2024-05-02", "NVDA.OQ", "NVDA beats earnings"),
    };
    CHECK(dedupe_articles(different_days, 0.9).articles.size() == 2);

    // token-set Jaccard 3/4 = 0.75 meets a 0.75 threshold
    Corpus near;
    near.articles = {
        article("2024-05-01", "NVDA.OQ", "NVDA beats earnings"),
        article("2024-05-01", "NVDA.OQ", "NVDA beats earnings estimates"),
    };
    CHECK(dedupe_articles(near, 0.75).articles.size() == 1);
    CHECK(dedupe_articles(near, 0.76).articles.size() == 2);

    CHECK(dedupe_articles(Corpus{}, 0.9).articles.empty());
}

TEST_CASE("dedupe is idempotent") {
    Corpus corpus;
    const char* titles[] = {"alpha beta gamma", "alpha beta gamma delta", "unrelated words here",
                            "alpha beta", "alpha beta gamma"};
    for (const char* t : titles) corpus.articles.push_back(article("2024-05-01", "NVDA.OQ", t));
    auto once = dedupe_articles(corpus, 0.7);
    auto twice = dedupe_articles(once, 0.7);
    CHECK(once.articles == twice.articles);
}

TEST_CASE("news count weights") {
    Corpus corpus;
    corpus.articles = {article("2024-05-01", "A", "t1"), article("2024-05-01", "B", "t2")};
    std::vector<std::string> tickers{"A", "B"};
    auto w = news_count_weights(corpus, tickers);
    CHECK(w["A"] == doctest::Approx(0.5));

    corpus.articles.push_back(article("2024-05-02", "A", "t3"));
    corpus.articles.push_back(article("2024-05-03", "A", "t4"));
    w = news_count_weights(corpus, tickers);
    CHECK(w["A"] == doctest::Approx(0.75));
    CHECK(w["B"] == doctest::Approx(0.25));

    CHECK_THROWS_AS(news_count_weights(Corpus{}, tickers), DataError);
}

TEST_CASE("weights sum to one for random corpora") {
    for (int trial = 0; trial < 20; ++trial) {
        Corpus corpus;
        std::vector<std::string> tickers{"A", "B", "C", "D", "E", "F", "G"};
        for (int i = 0; i <= trial * 7 + 3; ++i)
            corpus.articles.push_back(
                article("2024-05-01", tickers[(i * 13 + trial) % 7].c_str(), "t"));
        auto w = news_count_weights(corpus, tickers);
        double total = 0.0;
        for (const auto& [t, v] : w) total += v;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("bias vector") {
    WeightMap even{{"A", 0.5}, {"B", 0.5}};
    auto zero = bias_vector(even, even);
    CHECK(zero.entries["A"] == doctest::Approx(0.0));

    WeightMap news_w{{"NVDA.OQ", 0.2452}, {"AVGO.OQ", 0.0452}};
    WeightMap market_w{{"NVDA.OQ", 0.0866}, {"AVGO.OQ", 0.0943}};
    auto bias = bias_vector(news_w, market_w);
    CHECK(bias.entries["NVDA.OQ"] == doctest::Approx(0.1586));
    CHECK(bias.entries["AVGO.OQ"] == doctest::Approx(-0.0491));

    WeightMap mismatched{{"NVDA.OQ", 1.0}};
    CHECK_THROWS_AS(bias_vector(news_w, mismatched), DataError);
}

TEST_CASE("appendix fixture integrity") {
    auto table = appendix_a_fixture();
    REQUIRE(table.rows.size() == 30);
    CHECK(table.rows.front().ticker == "NVDA.OQ");
    CHECK(table.rows.front().capital_weight == doctest::Approx(0.0866));
    CHECK(table.rows.front().news_weight == doctest::Approx(0.2452));
    CHECK(table.rows.back().ticker == "RMBS.OQ");
    CHECK(table.rows.back().close_price == doctest::Approx(63.88));

    double capital = 0.0, news_total = 0.0;
    for (const auto& r : table.rows) {
        capital += r.capital_weight;
        news_total += r.news_weight;
    }
    CHECK(capital == doctest::Approx(0.9999).epsilon(0.005));
    CHECK(news_total == doctest::Approx(0.9978).epsilon(0.005));
}

TEST_CASE("weight table CSV round trip") {
    auto table = appendix_a_fixture();
    std::ostringstream os;
    write_weight_table_csv(os, table);
    std::istringstream is(os.str());
    auto parsed = parse_weight_table_csv(is);
    REQUIRE(parsed.rows.size() == table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        CHECK(parsed.rows[i].ticker == table.rows[i].ticker);
        CHECK(parsed.rows[i].news_weight == doctest::Approx(table.rows[i].news_weight));
    }
}
