#include "hypefin/news_ingest.hpp"

namespace hypefin::news {

namespace {

struct RawRow {
    const char* ticker;
    double close_price;
    double capital_millions;
    double capital_weight_pct;
    double news_weight_pct;
};

// SOXX constituent snapshot (30 tickers, mid-July 2024). The two sector
// futures entries were removed upstream; no renormalization applied.
constexpr RawRow kRows[] = {
    {"NVDA.OQ", 131.38, 1120867.0, 8.66, 24.52},
    {"INTC.OQ", 34.59, 524362.2, 4.05, 12.49},
    {"AMD.OQ", 177.1, 992494.8, 7.67, 6.11},
    {"TSM.N", 184.52, 528702.9, 4.08, 5.96},
    {"MU.OQ", 131.14, 490637.9, 3.79, 5.32},
    {"QCOM.OQ", 207.12, 752063.7, 5.81, 4.82},
    {"AVGO.OQ", 1733.31, 1220293.0, 9.43, 4.52},
    {"AMAT.OQ", 251.47, 866274.3, 6.69, 3.27},
    {"ASML.OQ", 1059.97, 477667.0, 3.69, 3.25},
    {"STM.N", 41.51, 137307.8, 1.06, 2.71},
    {"ON.OQ", 73.48, 394591.1, 3.05, 2.23},
    {"MRVL.OQ", 73.84, 501852.5, 3.88, 2.15},
    {"MCHP.OQ", 92.34, 444145.9, 3.43, 2.03},
    {"WOLF.N", 23.05, 35874.98, 0.28, 1.83},
    {"NXPI.OQ", 274.91, 472496.2, 3.65, 1.78},
    {"TXN.OQ", 200.16, 480016.7, 3.71, 1.77},
    {"ADI.OQ", 232.01, 462719.8, 3.57, 1.65},
    {"LRCX.OQ", 1112.55, 558002.5, 4.31, 1.54},
    {"UMC.N", 8.59, 78866.05, 0.61, 1.25},
    {"KLAC.OQ", 874.9, 538704.0, 4.16, 1.22},
    {"ASX.N", 11.96, 96245.99, 0.74, 1.21},
    {"QRVO.OQ", 119.69, 142502.9, 1.10, 1.15},
    {"TER.OQ", 153.48, 295777.2, 2.28, 0.97},
    {"MKSI.OQ", 135.06, 113224.3, 0.87, 0.95},
    {"SWKS.OQ", 106.41, 213374.7, 1.65, 0.94},
    {"ACLS.OQ", 151.06, 60574.45, 0.47, 0.91},
    {"ENTG.OQ", 140.23, 263961.8, 2.04, 0.88},
    {"LSCC.OQ", 59.75, 101910.3, 0.79, 0.87},
    {"MPWR.OQ", 846.2, 493544.3, 3.81, 0.76},
    {"RMBS.OQ", 63.88, 85799.32, 0.66, 0.72},
};

} // namespace

TickerWeightTable appendix_a_fixture() {
    TickerWeightTable out;
    out.rows.reserve(std::size(kRows));
    for (const auto& r : kRows)
        out.rows.push_back({r.ticker, r.close_price, r.capital_millions,
                            r.capital_weight_pct / 100.0, r.news_weight_pct / 100.0});
    return out;
}

} // namespace hypefin::news
