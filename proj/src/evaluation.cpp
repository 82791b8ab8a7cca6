#include "qpipe/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "qpipe/baselines.hpp"

namespace qpipe {

std::vector<std::size_t> FoldPlan::test_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i) {
        if (fold_of[i] == fold) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> FoldPlan::train_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i) {
        if (fold_of[i] != fold) {
            out.push_back(i);
        }
    }
    return out;
}

FoldPlan stratified_kfold(const Dataset& dataset, int num_folds, std::uint64_t seed) {
    if (num_folds < 2) {
        throw ParameterError("cross-validation needs at least 2 folds");
    }
    std::vector<std::size_t> negatives;
    std::vector<std::size_t> positives;
    for (std::size_t i = 0; i < dataset.labels.size(); ++i) {
        (dataset.labels[i] < 0 ? negatives : positives).push_back(i);
    }
    for (const auto* cls : {&negatives, &positives}) {
        if (cls->size() < static_cast<std::size_t>(num_folds)) {
            throw StratificationError("a class has " + std::to_string(cls->size()) +
                                      " instances, fewer than " + std::to_string(num_folds) + " folds");
        }
    }

    RngStream rng(derive_seed(seed, {hash_tag("stratified-kfold")}));
    FoldPlan plan;
    plan.num_folds = num_folds;
    plan.seed = seed;
    plan.fold_of.assign(dataset.labels.size(), 0);

    // Shuffle within each class, then deal the concatenated sequence
    // round-robin; fold sizes differ by at most one and so do per-class
    // counts.
    std::size_t position = 0;
    for (auto* cls : {&negatives, &positives}) {
        rng.shuffle(*cls);
        for (std::size_t idx : *cls) {
            plan.fold_of[idx] = static_cast<int>(position % num_folds);
            ++position;
        }
    }
    return plan;
}

bool MethodSpec::stochastic() const {
    switch (kind) {
        case MethodKind::Pipeline:
            return knn_modality == Modality::Simulation || classifier_modality == Modality::Simulation;
        case MethodKind::ClassifierStandalone:
            return modality == Modality::Simulation;
        default:
            return false;
    }
}

double second_model_usage(const std::vector<bool>& second_model_flags) {
    if (second_model_flags.empty()) {
        return 0.0;
    }
    std::size_t used = 0;
    for (bool f : second_model_flags) {
        used += f ? 1 : 0;
    }
    return static_cast<double>(used) / static_cast<double>(second_model_flags.size());
}

FoldOutcome evaluate_fold(const MethodSpec& method, const Dataset& dataset, const FoldPlan& plan, int k,
                          int fold, int run, const EvalParams& params) {
    const std::vector<std::size_t> train_idx = plan.train_indices(fold);
    const std::vector<std::size_t> test_idx = plan.test_indices(fold);
    if (train_idx.empty() || test_idx.empty()) {
        throw ParameterError("fold " + std::to_string(fold) + " has an empty split");
    }

    FeatureMatrix train_raw;
    std::vector<int> train_labels;
    train_raw.reserve(train_idx.size());
    train_labels.reserve(train_idx.size());
    for (std::size_t i : train_idx) {
        train_raw.push_back(dataset.features[i]);
        train_labels.push_back(dataset.labels[i]);
    }

    const NormalizationParams norm = fit_minmax(train_raw);
    const FeatureMatrix train = apply_minmax(norm, train_raw);

    FoldOutcome outcome;
    std::vector<bool> usage_flags;
    usage_flags.reserve(test_idx.size());
    std::size_t correct = 0;

    for (std::size_t i : test_idx) {
        const std::vector<double> test = apply_minmax(norm, dataset.features[i]);
        const std::uint64_t seed =
            derive_seed(params.base_seed, {hash_tag(method.id), hash_tag(dataset.name),
                                           static_cast<std::uint64_t>(method.k_independent() ? 0 : k),
                                           static_cast<std::uint64_t>(run), static_cast<std::uint64_t>(fold),
                                           static_cast<std::uint64_t>(i)});
        int label = 0;
        bool used_second = false;
        switch (method.kind) {
            case MethodKind::Pipeline: {
                ModalityConfig cfg;
                cfg.knn_modality = method.knn_modality;
                cfg.classifier_modality = method.classifier_modality;
                cfg.shots = params.shots;
                cfg.seed = seed;
                const PipelinePrediction pred =
                    run_pipeline(train, train_labels, test, k, cfg, params.qubit_cap);
                label = pred.label;
                used_second = pred.second_model_used;
                outcome.tie_count += pred.neighbors.tie_policy_applied ? 1 : 0;
                outcome.degenerate_count +=
                    (pred.knn_degenerate || pred.knn_zero_count_branch || pred.classifier_tie) ? 1 : 0;
                break;
            }
            case MethodKind::ClassifierStandalone: {
                const PipelinePrediction pred = run_classifier_standalone(
                    train, train_labels, test, method.modality, params.shots, seed, params.qubit_cap);
                label = pred.label;
                used_second = pred.second_model_used;
                outcome.degenerate_count += pred.classifier_tie ? 1 : 0;
                break;
            }
            case MethodKind::KnnMajority: {
                const BaselineResult res = knn_majority(train, train_labels, test, k, method.metric);
                label = res.label;
                used_second = res.mixed_neighbors;
                outcome.tie_count += res.neighbors.tie_policy_applied ? 1 : 0;
                outcome.degenerate_count += res.vote_tie ? 1 : 0;
                break;
            }
            case MethodKind::KnnPlusClassifier: {
                const BaselineResult res = knn_plus_classifier(train, train_labels, test, k, method.metric);
                label = res.label;
                used_second = res.mixed_neighbors;
                outcome.tie_count += res.neighbors.tie_policy_applied ? 1 : 0;
                outcome.degenerate_count += res.vote_tie ? 1 : 0;
                break;
            }
        }
        usage_flags.push_back(used_second);
        if (label == dataset.labels[i]) {
            ++correct;
        }
        if (params.record_predictions) {
            outcome.predictions.push_back(label);
        }
    }

    outcome.accuracy = static_cast<double>(correct) / static_cast<double>(test_idx.size());
    outcome.second_model_usage = second_model_usage(usage_flags);
    return outcome;
}

double RunResult::mean_accuracy() const {
    if (fold_accuracy.empty()) {
        return 0.0;
    }
    return std::accumulate(fold_accuracy.begin(), fold_accuracy.end(), 0.0) /
           static_cast<double>(fold_accuracy.size());
}

double RunResult::mean_usage() const {
    if (fold_usage.empty()) {
        return 0.0;
    }
    return std::accumulate(fold_usage.begin(), fold_usage.end(), 0.0) /
           static_cast<double>(fold_usage.size());
}

int RunResult::tie_count() const {
    int t = 0;
    for (const auto& run : outcomes) {
        for (const auto& fo : run) {
            t += fo.tie_count;
        }
    }
    return t;
}

void RunResult::finalize() {
    fold_accuracy.assign(num_folds, 0.0);
    fold_usage.assign(num_folds, 0.0);
    for (const auto& run : outcomes) {
        for (int f = 0; f < num_folds; ++f) {
            fold_accuracy[f] += run[f].accuracy;
            fold_usage[f] += run[f].second_model_usage;
        }
    }
    const double inv = 1.0 / static_cast<double>(outcomes.size());
    for (int f = 0; f < num_folds; ++f) {
        fold_accuracy[f] *= inv;
        fold_usage[f] *= inv;
    }
}

std::vector<RunResult> evaluate_method(const MethodSpec& method, const Dataset& dataset,
                                       std::span<const int> k_values, const FoldPlan& plan,
                                       const EvalParams& params) {
    const int effective_runs = method.stochastic() ? params.runs : 1;
    std::vector<RunResult> results;

    // A whole-fold classifier ignores k; evaluate once and replicate so the
    // result set still pairs with per-k methods.
    const bool collapse_k = method.k_independent();
    const std::size_t distinct = collapse_k ? 1 : k_values.size();

    for (std::size_t ki = 0; ki < distinct; ++ki) {
        RunResult rr;
        rr.method_id = method.id;
        rr.dataset_id = dataset.name;
        rr.k = k_values[ki];
        rr.num_folds = plan.num_folds;
        rr.runs = effective_runs;
        rr.outcomes.resize(effective_runs);
        for (int run = 0; run < effective_runs; ++run) {
            rr.outcomes[run].reserve(plan.num_folds);
            for (int fold = 0; fold < plan.num_folds; ++fold) {
                rr.outcomes[run].push_back(
                    evaluate_fold(method, dataset, plan, k_values[ki], fold, run, params));
            }
        }
        rr.finalize();
        results.push_back(std::move(rr));
    }

    if (collapse_k) {
        for (std::size_t ki = 1; ki < k_values.size(); ++ki) {
            RunResult copy = results.front();
            copy.k = k_values[ki];
            results.push_back(std::move(copy));
        }
    }
    return results;
}

namespace {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DimensionError("paired samples must have equal length");
    }
    std::vector<double> diffs;
    diffs.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (d != 0.0) {
            diffs.push_back(d);
        }
    }

    WilcoxonResult res;
    res.n_nonzero = static_cast<int>(diffs.size());
    if (diffs.empty()) {
        res.degenerate = true;
        res.p_value = 1.0;
        return res;
    }

    const int n = res.n_nonzero;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(diffs[a]) < std::abs(diffs[b]); });

    // average ranks over groups of tied magnitudes, scaled by 2 so every rank
    // is an integer
    std::vector<int> scaled_rank(n, 0);
    double tie_correction = 0.0;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && std::abs(diffs[order[j]]) == std::abs(diffs[order[i]])) {
            ++j;
        }
        const int t = j - i;
        const int scaled_avg = (i + 1) + j;  // 2 * (sum of ranks i+1..j) / t
        for (int g = i; g < j; ++g) {
            scaled_rank[order[g]] = scaled_avg;
        }
        tie_correction += static_cast<double>(t) * t * t - t;
        i = j;
    }

    long long w_plus_scaled = 0;
    for (int g = 0; g < n; ++g) {
        if (diffs[g] > 0.0) {
            w_plus_scaled += scaled_rank[g];
        }
    }
    res.statistic = static_cast<double>(w_plus_scaled) / 2.0;

    if (n <= 25) {
        // exact null distribution: subset-sum counts over the scaled ranks
        res.exact = true;
        const long long total = 2LL * n * (n + 1) / 2;
        std::vector<double> count(static_cast<std::size_t>(total) + 1, 0.0);
        count[0] = 1.0;
        long long reach = 0;
        for (int g = 0; g < n; ++g) {
            const int s = scaled_rank[g];
            reach += s;
            for (long long v = reach; v >= s; --v) {
                count[v] += count[v - s];
            }
        }
        const double denom = std::ldexp(1.0, n);  // 2^n
        double below = 0.0;
        double above = 0.0;
        for (long long v = 0; v <= total; ++v) {
            if (v <= w_plus_scaled) {
                below += count[v];
            }
            if (v >= w_plus_scaled) {
                above += count[v];
            }
        }
        res.p_value = std::min(1.0, 2.0 * std::min(below, above) / denom);
        return res;
    }

    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    const double variance = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_correction / 48.0;
    const double w = res.statistic;
    double z = 0.0;
    if (w > mean) {
        z = (w - mean - 0.5) / std::sqrt(variance);
    } else if (w < mean) {
        z = (w - mean + 0.5) / std::sqrt(variance);
    }
    res.p_value = std::min(1.0, 2.0 * normal_sf(std::abs(z)));
    return res;
}

}  // namespace qpipe
