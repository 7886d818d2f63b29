#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hypefin/date.hpp"

namespace hypefin::forecast {

struct Dataset {
    std::vector<std::vector<double>> features; // row-major, rows = dates
    std::vector<int> targets;                  // binary labels (or cast reals for OLS)
    std::vector<Date> dates;
    std::vector<std::string> feature_names;

    std::size_t rows() const { return features.size(); }
    std::size_t cols() const { return features.empty() ? 0 : features.front().size(); }
    Dataset select_rows(std::span<const std::size_t> idx) const;
    Dataset select_column(std::size_t col) const;
};

enum class SplitMode { random, chronological };

struct SplitSpec {
    double train_frac = 0.6;
    double val_frac = 0.2;
    double test_frac = 0.2;
    std::uint64_t seed = 0;
    SplitMode mode = SplitMode::random;
};

struct Splits {
    Dataset train, val, test;
};

Splits split(const Dataset& dataset, const SplitSpec& spec);

enum class ModelKind { lda, logistic, ols };

struct FitResult {
    ModelKind kind = ModelKind::lda;
    std::vector<double> coef;   // one per feature
    double intercept = 0.0;     // decision threshold offset
    double validation_score = 0.0;
    std::uint64_t seed = 0;
    bool converged = true;
    bool separation_capped = false; // logistic: perfect separation detected
    bool rank_deficient = false;    // ridge jitter applied
};

/// Two-class Fisher LDA with pooled covariance and class priors; singular
/// covariance gets a ridge jitter of 1e-6 * trace / dim.
FitResult lda_fit(const Dataset& train);
std::vector<int> lda_predict(const FitResult& fit,
                             std::span<const std::vector<double>> features);

/// Binary logistic regression by IRLS; predictions threshold p at 0.5.
FitResult logistic_fit(const Dataset& train, int max_iter = 500, double tol = 1e-8);
std::vector<int> logistic_predict(const FitResult& fit,
                                  std::span<const std::vector<double>> features);

struct OlsResult {
    std::vector<double> coef;
    double intercept = 0.0;
    double r_squared = 0.0;
    bool rank_deficient = false;
};

/// Closed-form least squares with intercept; R^2 = 1 - SS_res / SS_tot.
OlsResult ols_fit(std::span<const std::vector<double>> X, std::span<const double> y);

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    long support = 0;
    bool precision_undefined = false; // no predicted instances of this class
};

struct ClassificationReport {
    ClassMetrics cls[2];
    double accuracy = 0.0;
    ClassMetrics macro_avg;    // support = total
    ClassMetrics weighted_avg; // weighted recall equals accuracy
};

ClassificationReport classification_report(std::span<const int> y_true,
                                           std::span<const int> y_pred);

/// Plain-text table: per-class rows, accuracy, macro avg, weighted avg.
std::string format_report(const ClassificationReport& report);
/// CSV rows: `class,precision,recall,f1,support`.
void write_report_csv(std::ostream& out, const ClassificationReport& report);

struct SweepResult {
    std::string indicator;
    FitResult best;
    std::uint64_t best_seed = 0;
    double best_val_accuracy = 0.0;
    double test_accuracy = 0.0;
    ClassificationReport report;
};

/// For each feature column: try seeds 0..n_states-1, keep the best validation
/// accuracy (ties -> lowest seed), then score that model on its test split.
/// Deterministic regardless of internal parallelism.
std::vector<SweepResult> random_state_sweep(const Dataset& dataset, int n_states,
                                            ModelKind kind,
                                            const SplitSpec& base_spec = {});

double accuracy(std::span<const int> y_true, std::span<const int> y_pred);

} // namespace hypefin::forecast
