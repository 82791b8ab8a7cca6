#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qpipe/dataset.hpp"
#include "qpipe/pipeline.hpp"

namespace qpipe {

// Deterministic per-instance fold assignment preserving class ratios: each
// class is shuffled with the seed, classes are concatenated, and positions
// are dealt round-robin over the folds.
struct FoldPlan {
    int num_folds = 0;
    std::uint64_t seed = 0;
    std::vector<int> fold_of;  // one entry per dataset instance

    std::vector<std::size_t> test_indices(int fold) const;
    std::vector<std::size_t> train_indices(int fold) const;
};

FoldPlan stratified_kfold(const Dataset& dataset, int num_folds, std::uint64_t seed);

enum class MethodKind { Pipeline, ClassifierStandalone, KnnMajority, KnnPlusClassifier };

struct MethodSpec {
    std::string id;
    MethodKind kind = MethodKind::Pipeline;
    Modality knn_modality = Modality::Classical;         // Pipeline
    Modality classifier_modality = Modality::Classical;  // Pipeline
    Modality modality = Modality::Statevector;           // ClassifierStandalone
    Metric metric = Metric::Cosine;                      // baselines

    bool stochastic() const;
    // true when predictions do not depend on k (whole-fold classifier)
    bool k_independent() const { return kind == MethodKind::ClassifierStandalone; }
};

struct EvalParams {
    int runs = 1;
    std::uint64_t shots = 0;
    std::uint64_t base_seed = 0;
    int qubit_cap = kMaxQubits;
    bool record_predictions = false;
};

struct FoldOutcome {
    double accuracy = 0.0;
    double second_model_usage = 0.0;
    int tie_count = 0;         // predictions whose neighbor cut hit a near-tie
    int degenerate_count = 0;  // degenerate scores, empty branches, vote ties
    std::vector<int> predictions;  // filled when record_predictions is set
};

struct RunResult {
    std::string method_id;
    std::string dataset_id;
    int k = 0;
    int num_folds = 0;
    int runs = 1;
    std::vector<std::vector<FoldOutcome>> outcomes;  // [run][fold]
    std::vector<double> fold_accuracy;               // run-averaged, [fold]
    std::vector<double> fold_usage;

    double mean_accuracy() const;
    double mean_usage() const;
    int tie_count() const;
    void finalize();  // fills the run-averaged vectors from outcomes
};

// Trains on the fold complement (min-max fitted on training data only) and
// predicts every test instance of the fold.
FoldOutcome evaluate_fold(const MethodSpec& method, const Dataset& dataset, const FoldPlan& plan, int k,
                          int fold, int run, const EvalParams& params);

// Full (k x fold x run) grid for one method on one dataset; stochastic
// methods execute params.runs runs, deterministic ones a single run.
std::vector<RunResult> evaluate_method(const MethodSpec& method, const Dataset& dataset,
                                       std::span<const int> k_values, const FoldPlan& plan,
                                       const EvalParams& params);

// Fraction of predictions whose neighbor set contained both classes.
double second_model_usage(const std::vector<bool>& second_model_flags);

struct WilcoxonResult {
    double p_value = 1.0;
    double statistic = 0.0;  // W+, the positive signed-rank sum
    int n_nonzero = 0;       // pairs left after discarding zero differences
    bool degenerate = false; // every difference was zero
    bool exact = false;      // exact enumeration path (n_nonzero <= 25)
};

// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences
// are discarded, tied magnitudes receive average ranks; the null
// distribution is enumerated exactly up to n = 25 and approximated normally
// (with continuity correction) beyond that.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

}  // namespace qpipe
