#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qpipe/evaluation.hpp"

namespace qpipe {

inline constexpr const char* kVersion = "0.1.0";

struct Comparison {
    std::string method_a;
    std::string method_b;
};

// Validated experiment description. Parsed from a JSON config file; unknown
// keys are rejected so typos cannot silently change an experiment.
struct ExperimentConfig {
    std::vector<std::filesystem::path> dataset_paths;
    std::vector<MethodSpec> methods;
    std::vector<int> k_values;
    int num_folds = 5;
    std::uint64_t fold_seed = 0;
    std::uint64_t shots = 0;
    int runs = 1;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir;
    int qubit_cap = kMaxQubits;
    std::vector<Comparison> comparisons;
    bool record_predictions = false;
};

ExperimentConfig parse_config(const std::filesystem::path& path);
void validate_config(const ExperimentConfig& config);

std::string modality_name(Modality m);
Modality parse_modality(const std::string& name);
std::string metric_name(Metric m);
Metric parse_metric(const std::string& name);
std::string method_kind_name(MethodKind k);

// Canonical id, e.g. pipeline_classical_statevector, classifier_statevector,
// knn_euclidean, knn_plus_classifier_cosine.
std::string default_method_id(const MethodSpec& spec);

// Accuracy table keyed by (method, dataset, k, fold); the common currency of
// comparisons and the external-baseline CSV contract.
struct AccuracyKey {
    std::string method;
    std::string dataset;
    int k = 0;
    int fold = 0;
    auto operator<=>(const AccuracyKey&) const = default;
};
using AccuracyTable = std::map<AccuracyKey, double>;

AccuracyTable accuracy_table(const std::vector<RunResult>& results);
// Reads either a results.json produced by `run` or an external CSV with
// columns method,dataset,fold,k,accuracy.
AccuracyTable load_accuracy_file(const std::filesystem::path& path);

struct ComparisonRow {
    std::string dataset;
    int k = 0;
    int fold = 0;
    double accuracy_a = 0.0;
    double accuracy_b = 0.0;
};

struct ComparisonStats {
    int k = 0;
    int n_pairs = 0;
    WilcoxonResult wilcoxon;
};

struct ComparisonOutput {
    std::string method_a;
    std::string method_b;
    std::vector<ComparisonRow> rows;     // sorted by (dataset, k, fold)
    std::vector<ComparisonStats> stats;  // one entry per k
};

// Pairs the two methods' fold accuracies and runs the signed-rank test per k.
// Missing counterpart keys raise a PairingError naming them.
ComparisonOutput compare_methods(const AccuracyTable& table, const std::string& method_a,
                                 const std::string& method_b);

struct ExperimentOutput {
    std::vector<RunResult> results;
    std::vector<ComparisonOutput> comparisons;
    std::map<std::string, double> timings_seconds;  // "method/dataset/k" -> wall time
};

// Executes the full (dataset x method x k x fold x run) grid with up to
// `workers` threads. Results are merged in a deterministic order, so the
// output is independent of the worker count.
ExperimentOutput run_experiment(const ExperimentConfig& config, int workers);

// Serialization. results.json is byte-stable for a fixed config except for
// the metadata timestamp; timings go to a separate file because wall times
// are not reproducible.
std::string results_to_json(const ExperimentConfig& config, const std::vector<RunResult>& results,
                            const std::string& timestamp);
void write_experiment_files(const ExperimentConfig& config, const ExperimentOutput& output,
                            const std::filesystem::path& output_dir);
void write_comparison_files(const ComparisonOutput& cmp, const std::filesystem::path& output_dir);

}  // namespace qpipe
