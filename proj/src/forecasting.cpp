#include "hypefin/forecasting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <thread>

#include "hypefin/errors.hpp"
#include "hypefin/kernels.hpp"
#include "hypefin/rng.hpp"

namespace hypefin::forecast {

namespace {

// Dense symmetric solve via Cholesky; adds a ridge jitter on failure.
// Dimensions here are tiny (features + intercept).
struct SymSolve {
    std::vector<double> solution;
    bool jittered = false;
};

bool cholesky(std::vector<double>& a, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (d <= 0.0) return false;
        const double l = std::sqrt(d);
        a[j * n + j] = l;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = s / l;
        }
    }
    return true;
}

SymSolve solve_spd(std::vector<double> a, std::vector<double> b, std::size_t n) {
    SymSolve out;
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += a[i * n + i];
    std::vector<double> chol = a;
    if (!cholesky(chol, n)) {
        const double jitter = 1e-6 * (trace > 0.0 ? trace / static_cast<double>(n) : 1.0);
        chol = a;
        for (std::size_t i = 0; i < n; ++i) chol[i * n + i] += jitter;
        if (!cholesky(chol, n))
            throw DataError("linear solve: matrix not positive definite even with jitter");
        out.jittered = true;
    }
    // forward then back substitution with L in the lower triangle
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= chol[i * n + k] * y[k];
        y[i] = s / chol[i * n + i];
    }
    out.solution.assign(n, 0.0);
    for (std::size_t ii = n; ii > 0; --ii) {
        const std::size_t i = ii - 1;
        double s = y[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= chol[k * n + i] * out.solution[k];
        out.solution[i] = s / chol[i * n + i];
    }
    return out;
}

void check_binary(std::span<const int> y) {
    for (int v : y)
        if (v != 0 && v != 1) throw DataError("labels must be 0 or 1");
}

} // namespace

Dataset Dataset::select_rows(std::span<const std::size_t> idx) const {
    Dataset out;
    out.feature_names = feature_names;
    out.features.reserve(idx.size());
    for (std::size_t i : idx) {
        out.features.push_back(features[i]);
        out.targets.push_back(targets[i]);
        if (!dates.empty()) out.dates.push_back(dates[i]);
    }
    return out;
}

Dataset Dataset::select_column(std::size_t col) const {
    Dataset out;
    out.targets = targets;
    out.dates = dates;
    if (col < feature_names.size()) out.feature_names = {feature_names[col]};
    out.features.reserve(features.size());
    for (const auto& row : features) out.features.push_back({row[col]});
    return out;
}

Splits split(const Dataset& dataset, const SplitSpec& spec) {
    const std::size_t n = dataset.rows();
    if (n < 10) throw DataError("split: need at least 10 rows");
    if (!(spec.train_frac > 0.0 && spec.val_frac > 0.0 && spec.test_frac > 0.0))
        throw ConfigError("split: fractions must be positive");
    if (std::abs(spec.train_frac + spec.val_frac + spec.test_frac - 1.0) > 1e-9)
        throw ConfigError("split: fractions must sum to 1");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    if (spec.mode == SplitMode::random) {
        Rng rng(spec.seed);
        rng.shuffle(idx);
    } else {
        // chronological: sort by date when dates exist, else keep input order
        if (!dataset.dates.empty())
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                return dataset.dates[a] < dataset.dates[b];
            });
    }
    const std::size_t n_train = static_cast<std::size_t>(spec.train_frac * n);
    const std::size_t n_val = static_cast<std::size_t>(spec.val_frac * n);
    if (n_train == 0 || n_val == 0 || n_train + n_val >= n)
        throw DataError("split: degenerate split sizes");

    Splits out;
    out.train = dataset.select_rows({idx.data(), n_train});
    out.val = dataset.select_rows({idx.data() + n_train, n_val});
    out.test = dataset.select_rows({idx.data() + n_train + n_val, n - n_train - n_val});
    return out;
}

FitResult lda_fit(const Dataset& train) {
    const std::size_t n = train.rows();
    const std::size_t d = train.cols();
    if (n == 0 || d == 0) throw DataError("lda_fit: empty training data");
    check_binary(train.targets);

    std::size_t n0 = 0, n1 = 0;
    std::vector<double> m0(d, 0.0), m1(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto& m = train.targets[i] ? m1 : m0;
        (train.targets[i] ? n1 : n0)++;
        for (std::size_t j = 0; j < d; ++j) m[j] += train.features[i][j];
    }
    if (n0 == 0 || n1 == 0) throw DataError("lda_fit: training data has a single class");
    for (std::size_t j = 0; j < d; ++j) {
        m0[j] /= static_cast<double>(n0);
        m1[j] /= static_cast<double>(n1);
    }

    // pooled within-class covariance
    std::vector<double> cov(d * d, 0.0);
    std::vector<double> diff(d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& m = train.targets[i] ? m1 : m0;
        for (std::size_t j = 0; j < d; ++j) diff[j] = train.features[i][j] - m[j];
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k <= j; ++k) cov[j * d + k] += diff[j] * diff[k];
    }
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k <= j; ++k) {
            cov[j * d + k] /= static_cast<double>(n > 2 ? n - 2 : 1);
            cov[k * d + j] = cov[j * d + k];
        }

    std::vector<double> mean_diff(d);
    for (std::size_t j = 0; j < d; ++j) mean_diff[j] = m1[j] - m0[j];
    auto solved = solve_spd(cov, mean_diff, d);

    FitResult out;
    out.kind = ModelKind::lda;
    out.coef = solved.solution;
    out.rank_deficient = solved.jittered;
    // decision: w.x + intercept > 0 -> class 1
    double mid = 0.0;
    for (std::size_t j = 0; j < d; ++j) mid += out.coef[j] * 0.5 * (m0[j] + m1[j]);
    out.intercept = -mid + std::log(static_cast<double>(n1) / static_cast<double>(n0));
    return out;
}

std::vector<int> lda_predict(const FitResult& fit,
                             std::span<const std::vector<double>> features) {
    std::vector<int> out;
    out.reserve(features.size());
    for (const auto& row : features) {
        const double score = kernels::dot(fit.coef, row) + fit.intercept;
        out.push_back(score > 0.0 ? 1 : 0);
    }
    return out;
}

FitResult logistic_fit(const Dataset& train, int max_iter, double tol) {
    const std::size_t n = train.rows();
    const std::size_t d = train.cols();
    if (n == 0 || d == 0) throw DataError("logistic_fit: empty training data");
    check_binary(train.targets);
    {
        bool has0 = false, has1 = false;
        for (int v : train.targets) (v ? has1 : has0) = true;
        if (!has0 || !has1) throw DataError("logistic_fit: training data has a single class");
    }

    const std::size_t p = d + 1; // intercept first
    std::vector<double> beta(p, 0.0);
    FitResult out;
    out.kind = ModelKind::logistic;
    out.converged = false;

    std::vector<double> eta(n), mu(n), w(n);
    for (int iter = 0; iter < max_iter; ++iter) {
        // weighted normal equations X' W X beta_new = X' W z
        std::vector<double> xtwx(p * p, 0.0), xtwz(p, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double e = beta[0];
            for (std::size_t j = 0; j < d; ++j) e += beta[j + 1] * train.features[i][j];
            eta[i] = e;
            const double m = 1.0 / (1.0 + std::exp(-e));
            mu[i] = m;
            w[i] = std::max(m * (1.0 - m), 1e-10);
            const double z = e + (train.targets[i] - m) / w[i];
            // accumulate with x_i = (1, features)
            for (std::size_t a = 0; a < p; ++a) {
                const double xa = a == 0 ? 1.0 : train.features[i][a - 1];
                xtwz[a] += w[i] * xa * z;
                for (std::size_t b = 0; b <= a; ++b) {
                    const double xb = b == 0 ? 1.0 : train.features[i][b - 1];
                    xtwx[a * p + b] += w[i] * xa * xb;
                }
            }
        }
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = 0; b < a; ++b) xtwx[b * p + a] = xtwx[a * p + b];

        auto solved = solve_spd(xtwx, xtwz, p);
        out.rank_deficient = out.rank_deficient || solved.jittered;
        double delta = 0.0;
        for (std::size_t a = 0; a < p; ++a)
            delta = std::max(delta, std::abs(solved.solution[a] - beta[a]));
        beta = std::move(solved.solution);
        if (delta < tol) {
            out.converged = true;
            break;
        }
    }

    // perfect separation drives coefficients unbounded; cap and flag. Also
    // flag when IRLS failed to converge with every fitted probability
    // saturated at its label, the textbook separation signature.
    constexpr double kCap = 30.0;
    for (double& b : beta) {
        if (std::abs(b) > kCap) {
            b = b > 0.0 ? kCap : -kCap;
            out.separation_capped = true;
        }
    }
    if (!out.converged && !out.separation_capped) {
        bool saturated = true;
        for (std::size_t i = 0; i < n && saturated; ++i) {
            double e = beta[0];
            for (std::size_t j = 0; j < d; ++j) e += beta[j + 1] * train.features[i][j];
            saturated = std::abs(train.targets[i] - 1.0 / (1.0 + std::exp(-e))) < 1e-6;
        }
        out.separation_capped = saturated;
    }
    out.intercept = beta[0];
    out.coef.assign(beta.begin() + 1, beta.end());
    return out;
}

std::vector<int> logistic_predict(const FitResult& fit,
                                  std::span<const std::vector<double>> features) {
    std::vector<int> out;
    out.reserve(features.size());
    for (const auto& row : features) {
        const double eta = kernels::dot(fit.coef, row) + fit.intercept;
        out.push_back(eta > 0.0 ? 1 : 0); // p > 0.5 iff eta > 0
    }
    return out;
}

OlsResult ols_fit(std::span<const std::vector<double>> X, std::span<const double> y) {
    const std::size_t n = X.size();
    if (n < 2 || y.size() != n) throw DataError("ols_fit: need >= 2 aligned rows");
    const std::size_t d = X.front().size();
    const std::size_t p = d + 1;

    const double ymean = kernels::mean(y);
    double ss_tot = 0.0;
    for (double v : y) ss_tot += (v - ymean) * (v - ymean);
    if (ss_tot == 0.0) throw DataError("ols_fit: zero target variance, R^2 undefined");

    std::vector<double> xtx(p * p, 0.0), xty(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < p; ++a) {
            const double xa = a == 0 ? 1.0 : X[i][a - 1];
            xty[a] += xa * y[i];
            for (std::size_t b = 0; b <= a; ++b) {
                const double xb = b == 0 ? 1.0 : X[i][b - 1];
                xtx[a * p + b] += xa * xb;
            }
        }
    }
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < a; ++b) xtx[b * p + a] = xtx[a * p + b];

    auto solved = solve_spd(xtx, xty, p);

    OlsResult out;
    out.rank_deficient = solved.jittered;
    out.intercept = solved.solution[0];
    out.coef.assign(solved.solution.begin() + 1, solved.solution.end());

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double pred = out.intercept;
        for (std::size_t j = 0; j < d; ++j) pred += out.coef[j] * X[i][j];
        ss_res += (y[i] - pred) * (y[i] - pred);
    }
    out.r_squared = 1.0 - ss_res / ss_tot;
    return out;
}

double accuracy(std::span<const int> y_true, std::span<const int> y_pred) {
    if (y_true.size() != y_pred.size() || y_true.empty())
        throw DataError("accuracy: length mismatch");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) correct += y_true[i] == y_pred[i];
    return static_cast<double>(correct) / static_cast<double>(y_true.size());
}

ClassificationReport classification_report(std::span<const int> y_true,
                                           std::span<const int> y_pred) {
    if (y_true.size() != y_pred.size() || y_true.empty())
        throw DataError("classification_report: length mismatch");
    check_binary(y_true);
    check_binary(y_pred);

    long tp[2] = {0, 0}, fp[2] = {0, 0}, fn[2] = {0, 0};
    long correct = 0;
    const long total = static_cast<long>(y_true.size());
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int t = y_true[i], p = y_pred[i];
        if (t == p) {
            ++tp[t];
            ++correct;
        } else {
            ++fp[p];
            ++fn[t];
        }
    }

    ClassificationReport rep;
    rep.accuracy = static_cast<double>(correct) / static_cast<double>(total);
    for (int c = 0; c < 2; ++c) {
        ClassMetrics& m = rep.cls[c];
        m.support = tp[c] + fn[c];
        const long predicted = tp[c] + fp[c];
        if (predicted == 0) {
            m.precision = 0.0;
            m.precision_undefined = true;
        } else {
            m.precision = static_cast<double>(tp[c]) / static_cast<double>(predicted);
        }
        m.recall = m.support == 0 ? 0.0
                                  : static_cast<double>(tp[c]) / static_cast<double>(m.support);
        m.f1 = (m.precision + m.recall) == 0.0
                   ? 0.0
                   : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    auto avg = [&](auto get, bool weighted) {
        double acc = 0.0;
        for (int c = 0; c < 2; ++c)
            acc += get(rep.cls[c]) *
                   (weighted ? static_cast<double>(rep.cls[c].support) / total : 0.5);
        return acc;
    };
    rep.macro_avg.precision = avg([](const ClassMetrics& m) { return m.precision; }, false);
    rep.macro_avg.recall = avg([](const ClassMetrics& m) { return m.recall; }, false);
    rep.macro_avg.f1 = avg([](const ClassMetrics& m) { return m.f1; }, false);
    rep.macro_avg.support = total;
    rep.weighted_avg.precision = avg([](const ClassMetrics& m) { return m.precision; }, true);
    rep.weighted_avg.recall = avg([](const ClassMetrics& m) { return m.recall; }, true);
    rep.weighted_avg.f1 = avg([](const ClassMetrics& m) { return m.f1; }, true);
    rep.weighted_avg.support = total;
    return rep;
}

std::string format_report(const ClassificationReport& rep) {
    char buf[128];
    std::string out;
    out += "              precision    recall  f1-score   support\n\n";
    for (int c = 0; c < 2; ++c) {
        std::snprintf(buf, sizeof(buf), "%12d  %9.2f %9.2f %9.2f %9ld\n", c,
                      rep.cls[c].precision, rep.cls[c].recall, rep.cls[c].f1,
                      rep.cls[c].support);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "\n%12s  %19s %9.2f %9ld\n", "accuracy", "",
                  rep.accuracy, rep.macro_avg.support);
    out += buf;
    std::snprintf(buf, sizeof(buf), "%12s  %9.2f %9.2f %9.2f %9ld\n", "macro avg",
                  rep.macro_avg.precision, rep.macro_avg.recall, rep.macro_avg.f1,
                  rep.macro_avg.support);
    out += buf;
    std::snprintf(buf, sizeof(buf), "%12s  %9.2f %9.2f %9.2f %9ld\n", "weighted avg",
                  rep.weighted_avg.precision, rep.weighted_avg.recall, rep.weighted_avg.f1,
                  rep.weighted_avg.support);
    out += buf;
    return out;
}

void write_report_csv(std::ostream& out, const ClassificationReport& rep) {
    out << "class,precision,recall,f1,support\n";
    char buf[128];
    for (int c = 0; c < 2; ++c) {
        std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f,%ld\n", c, rep.cls[c].precision,
                      rep.cls[c].recall, rep.cls[c].f1, rep.cls[c].support);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "accuracy,,,%.6f,%ld\n", rep.accuracy,
                  rep.macro_avg.support);
    out << buf;
    std::snprintf(buf, sizeof(buf), "macro avg,%.6f,%.6f,%.6f,%ld\n", rep.macro_avg.precision,
                  rep.macro_avg.recall, rep.macro_avg.f1, rep.macro_avg.support);
    out << buf;
    std::snprintf(buf, sizeof(buf), "weighted avg,%.6f,%.6f,%.6f,%ld\n",
                  rep.weighted_avg.precision, rep.weighted_avg.recall, rep.weighted_avg.f1,
                  rep.weighted_avg.support);
    out << buf;
}

namespace {

struct SeedOutcome {
    double val_accuracy = -1.0;
    FitResult fit;
};

SeedOutcome evaluate_seed(const Dataset& column, ModelKind kind, const SplitSpec& base,
                          std::uint64_t seed) {
    SplitSpec spec = base;
    spec.seed = seed;
    Splits s = split(column, spec);
    SeedOutcome out;
    out.fit = kind == ModelKind::lda ? lda_fit(s.train) : logistic_fit(s.train);
    out.fit.seed = seed;
    const auto pred = kind == ModelKind::lda ? lda_predict(out.fit, s.val.features)
                                             : logistic_predict(out.fit, s.val.features);
    out.val_accuracy = accuracy(s.val.targets, pred);
    out.fit.validation_score = out.val_accuracy;
    return out;
}

} // namespace

std::vector<SweepResult> random_state_sweep(const Dataset& dataset, int n_states,
                                            ModelKind kind, const SplitSpec& base_spec) {
    if (n_states < 1) throw ConfigError("random_state_sweep: n_states must be >= 1");
    if (kind == ModelKind::ols)
        throw ConfigError("random_state_sweep: classification kinds only");

    std::vector<SweepResult> results;
    for (std::size_t col = 0; col < dataset.cols(); ++col) {
        const Dataset column = dataset.select_column(col);

        // fan out across seeds; reduction is by seed order, so the outcome is
        // independent of completion order
        std::vector<SeedOutcome> outcomes(static_cast<std::size_t>(n_states));
        const unsigned hw = std::thread::hardware_concurrency();
        const unsigned workers = std::min(hw > 0 ? hw : 1u, static_cast<unsigned>(n_states));
        if (workers > 1 && n_states > 8) {
            std::vector<std::future<void>> futs;
            for (unsigned w = 0; w < workers; ++w)
                futs.push_back(std::async(std::launch::async, [&, w] {
                    for (int s = static_cast<int>(w); s < n_states;
                         s += static_cast<int>(workers))
                        outcomes[s] = evaluate_seed(column, kind, base_spec, s);
                }));
            for (auto& f : futs) f.get();
        } else {
            for (int s = 0; s < n_states; ++s)
                outcomes[s] = evaluate_seed(column, kind, base_spec, s);
        }

        std::size_t best = 0;
        for (std::size_t s = 1; s < outcomes.size(); ++s)
            if (outcomes[s].val_accuracy > outcomes[best].val_accuracy) best = s;

        SweepResult r;
        r.indicator = col < dataset.feature_names.size() ? dataset.feature_names[col]
                                                         : "feature_" + std::to_string(col);
        r.best = outcomes[best].fit;
        r.best_seed = outcomes[best].fit.seed;
        r.best_val_accuracy = outcomes[best].val_accuracy;

        // evaluate the kept model on its own test split
        SplitSpec spec = base_spec;
        spec.seed = r.best_seed;
        Splits s = split(column, spec);
        const auto pred = kind == ModelKind::lda ? lda_predict(r.best, s.test.features)
                                                 : logistic_predict(r.best, s.test.features);
        r.test_accuracy = accuracy(s.test.targets, pred);
        r.report = classification_report(s.test.targets, pred);
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace hypefin::forecast
