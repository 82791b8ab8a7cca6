#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "qpipe/evaluation.hpp"

using namespace qpipe;

namespace {

Dataset make_dataset(int n_pos, int n_neg, int d, std::uint64_t seed, double separation = 0.5) {
    RngStream rng(seed);
    Dataset ds;
    ds.name = "synthetic_" + std::to_string(n_pos) + "_" + std::to_string(n_neg);
    for (int i = 0; i < n_pos + n_neg; ++i) {
        const bool pos = i < n_pos;
        std::vector<double> row(d);
        for (double& v : row) {
            v = (pos ? 0.0 : separation) + 0.3 * rng.uniform_double();
        }
        ds.features.push_back(row);
        ds.labels.push_back(pos ? +1 : -1);
    }
    return ds;
}

std::vector<int> fold_sizes(const FoldPlan& plan) {
    std::vector<int> sizes(plan.num_folds, 0);
    for (int f : plan.fold_of) {
        ++sizes[f];
    }
    return sizes;
}

// Direct 2^n enumeration of the signed-rank null distribution; the test-side
// oracle for the exact path.
double oracle_exact_p(const std::vector<double>& diffs) {
    const int n = static_cast<int>(diffs.size());
    std::vector<double> mags(n);
    for (int i = 0; i < n; ++i) {
        mags[i] = std::abs(diffs[i]);
    }
    // average ranks
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) { return mags[a] < mags[b]; });
    std::vector<double> rank(n, 0.0);
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && mags[order[j]] == mags[order[i]]) {
            ++j;
        }
        const double avg = (i + 1 + j) / 2.0;
        for (int g = i; g < j; ++g) {
            rank[order[g]] = avg;
        }
        i = j;
    }
    double w_obs = 0.0;
    for (int g = 0; g < n; ++g) {
        if (diffs[g] > 0.0) {
            w_obs += rank[g];
        }
    }
    int below = 0;
    int above = 0;
    const int total = 1 << n;
    for (int mask = 0; mask < total; ++mask) {
        double w = 0.0;
        for (int b = 0; b < n; ++b) {
            if (mask & (1 << b)) {
                w += rank[b];
            }
        }
        if (w <= w_obs + 1e-12) {
            ++below;
        }
        if (w >= w_obs - 1e-12) {
            ++above;
        }
    }
    return std::min(1.0, 2.0 * std::min(below, above) / static_cast<double>(total));
}

}  // namespace

TEST_CASE("stratified folds: balanced case") {
    const Dataset ds = make_dataset(50, 50, 3, 1);
    const FoldPlan plan = stratified_kfold(ds, 5, 42);
    CHECK(fold_sizes(plan) == std::vector<int>{20, 20, 20, 20, 20});
    for (int f = 0; f < 5; ++f) {
        int pos = 0;
        for (std::size_t i = 0; i < ds.labels.size(); ++i) {
            if (plan.fold_of[i] == f && ds.labels[i] > 0) {
                ++pos;
            }
        }
        CHECK(pos == 10);
    }
}

TEST_CASE("stratified folds: 71 instances split as 15/14/14/14/14") {
    const Dataset ds = make_dataset(22, 49, 3, 2);
    const FoldPlan plan = stratified_kfold(ds, 5, 7);
    std::vector<int> sizes = fold_sizes(plan);
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    CHECK(sizes == std::vector<int>{15, 14, 14, 14, 14});

    // per-class counts differ by at most one across folds
    for (int label : {+1, -1}) {
        std::vector<int> counts(5, 0);
        for (std::size_t i = 0; i < ds.labels.size(); ++i) {
            if (ds.labels[i] == label) {
                ++counts[plan.fold_of[i]];
            }
        }
        const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
        CHECK(*hi - *lo <= 1);
    }
}

TEST_CASE("stratified folds: determinism and the small-class error") {
    const Dataset ds = make_dataset(30, 20, 2, 3);
    const FoldPlan a = stratified_kfold(ds, 5, 99);
    const FoldPlan b = stratified_kfold(ds, 5, 99);
    CHECK(a.fold_of == b.fold_of);
    const FoldPlan c = stratified_kfold(ds, 5, 100);
    CHECK(a.fold_of != c.fold_of);

    const Dataset tiny = make_dataset(4, 30, 2, 4);
    CHECK_THROWS_AS(stratified_kfold(tiny, 5, 1), StratificationError);
    CHECK_THROWS_AS(stratified_kfold(ds, 1, 1), ParameterError);
}

TEST_CASE("evaluate_method: a separable dataset scores 1.0 everywhere") {
    const Dataset ds = make_dataset(30, 30, 4, 5, /*separation=*/3.0);
    const FoldPlan plan = stratified_kfold(ds, 5, 11);
    MethodSpec knn;
    knn.id = "knn_euclidean";
    knn.kind = MethodKind::KnnMajority;
    knn.metric = Metric::Euclidean;
    EvalParams params;
    params.base_seed = 1;
    const std::vector<int> ks{1, 3};
    const std::vector<RunResult> results = evaluate_method(knn, ds, ks, plan, params);
    REQUIRE(results.size() == 2);
    for (const auto& rr : results) {
        for (double acc : rr.fold_accuracy) {
            CHECK(acc == doctest::Approx(1.0));
        }
        CHECK(rr.mean_accuracy() == doctest::Approx(1.0));
    }
}

TEST_CASE("evaluate_method is reproducible call to call") {
    const Dataset ds = make_dataset(20, 20, 3, 6, 0.25);
    const FoldPlan plan = stratified_kfold(ds, 4, 13);
    MethodSpec pipe;
    pipe.id = "pipeline_simulation_classical";
    pipe.kind = MethodKind::Pipeline;
    pipe.knn_modality = Modality::Simulation;
    pipe.classifier_modality = Modality::Classical;
    EvalParams params;
    params.base_seed = 31;
    params.shots = 256;
    params.runs = 3;
    const std::vector<int> ks{3};

    const std::vector<RunResult> a = evaluate_method(pipe, ds, ks, plan, params);
    const std::vector<RunResult> b = evaluate_method(pipe, ds, ks, plan, params);
    REQUIRE(a.size() == 1);
    CHECK(a.front().runs == 3);
    CHECK(a.front().fold_accuracy == b.front().fold_accuracy);
    CHECK(a.front().fold_usage == b.front().fold_usage);

    // run-to-run variation exists for a stochastic method
    const auto& outcomes = a.front().outcomes;
    REQUIRE(outcomes.size() == 3);
}

TEST_CASE("k-independent standalone classifier replicates across k") {
    const Dataset ds = make_dataset(12, 12, 3, 7, 1.0);
    const FoldPlan plan = stratified_kfold(ds, 3, 17);
    MethodSpec clf;
    clf.id = "classifier_statevector";
    clf.kind = MethodKind::ClassifierStandalone;
    clf.modality = Modality::Statevector;
    EvalParams params;
    params.base_seed = 5;
    const std::vector<int> ks{3, 5, 7};
    const std::vector<RunResult> results = evaluate_method(clf, ds, ks, plan, params);
    REQUIRE(results.size() == 3);
    CHECK(results[0].fold_accuracy == results[1].fold_accuracy);
    CHECK(results[0].fold_accuracy == results[2].fold_accuracy);
    CHECK(results[1].k == 5);
}

TEST_CASE("second_model_usage fractions") {
    CHECK(second_model_usage({}) == doctest::Approx(0.0));
    CHECK(second_model_usage({false, false, false}) == doctest::Approx(0.0));
    CHECK(second_model_usage({true, true}) == doctest::Approx(1.0));
    CHECK(second_model_usage({true, false, false, true}) == doctest::Approx(0.5));
}

TEST_CASE("wilcoxon: canonical small cases") {
    const std::vector<double> base{1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> shifted(base);
    for (double& v : shifted) {
        v += 1.0;
    }
    const WilcoxonResult up = wilcoxon_signed_rank(shifted, base);
    CHECK(up.exact);
    CHECK(up.n_nonzero == 5);
    CHECK(up.p_value == doctest::Approx(0.0625));
    CHECK(up.statistic == doctest::Approx(15.0));

    const WilcoxonResult equal = wilcoxon_signed_rank(base, base);
    CHECK(equal.degenerate);
    CHECK(equal.p_value == doctest::Approx(1.0));

    const WilcoxonResult down = wilcoxon_signed_rank(base, shifted);
    CHECK(down.p_value == doctest::Approx(up.p_value));  // two-sided symmetry

    const std::vector<double> off{1.0, 2.0};
    CHECK_THROWS_AS(wilcoxon_signed_rank(off, base), DimensionError);
}

TEST_CASE("wilcoxon exact path agrees with direct enumeration for n <= 10") {
    RngStream rng(2718);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 5 + static_cast<int>(rng.uniform_below(6));
        std::vector<double> x(n);
        std::vector<double> y(n);
        std::vector<double> diffs(n);
        for (int i = 0; i < n; ++i) {
            // dyadic values keep x - y exact, so tie groups are exact too
            y[i] = static_cast<double>(rng.uniform_below(64)) / 64.0;
            double d = std::round((rng.uniform_double() - 0.5) * 6.0) / 4.0;
            if (d == 0.0) {
                d = 0.25;
            }
            diffs[i] = d;
            x[i] = y[i] + d;
        }
        const WilcoxonResult res = wilcoxon_signed_rank(x, y);
        CHECK(res.exact);
        CHECK(res.p_value == doctest::Approx(oracle_exact_p(diffs)).epsilon(1e-12));
    }
}

TEST_CASE("wilcoxon normal approximation tracks the exact path at n = 25") {
    RngStream rng(321);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 25;
        std::vector<double> x(n);
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) {
            y[i] = rng.uniform_double();
            x[i] = y[i] + rng.gaussian() * 0.3 + 0.1;
        }
        const WilcoxonResult exact = wilcoxon_signed_rank(x, y);
        REQUIRE(exact.exact);

        // independent normal approximation with continuity correction
        std::vector<double> mags;
        for (int i = 0; i < n; ++i) {
            mags.push_back(std::abs(x[i] - y[i]));
        }
        const double w = exact.statistic;
        const double mean = n * (n + 1) / 4.0;
        const double var = n * (n + 1) * (2.0 * n + 1) / 24.0;
        double z = 0.0;
        if (w != mean) {
            z = (w - mean - (w > mean ? 0.5 : -0.5)) / std::sqrt(var);
        }
        const double p_normal = std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
        CHECK(std::abs(exact.p_value - p_normal) < 0.02);
    }
}

TEST_CASE("wilcoxon switches to the normal path beyond n = 25") {
    std::vector<double> x;
    std::vector<double> y;
    RngStream rng(654);
    for (int i = 0; i < 40; ++i) {
        y.push_back(rng.uniform_double());
        x.push_back(y.back() + rng.gaussian() * 0.2 + 0.15);
    }
    const WilcoxonResult res = wilcoxon_signed_rank(x, y);
    CHECK_FALSE(res.exact);
    CHECK(res.p_value > 0.0);
    CHECK(res.p_value < 1.0);

    const WilcoxonResult mirrored = wilcoxon_signed_rank(y, x);
    CHECK(res.p_value == doctest::Approx(mirrored.p_value));
}
