#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qpipe/dataset.hpp"
#include "qpipe/statevector.hpp"

namespace qpipe {

// How a quantum stage is evaluated: an equivalent classical computation, the
// exact final-state probabilities, or finite-shot sampling.
enum class Modality { Classical, Statevector, Simulation };

enum class Metric { Cosine, Euclidean };

// Register layout of the k-NN circuit: the SWAP-test qubit q0, the training
// index register, the training-feature register and the test-feature
// register, in that wire order.
struct QknnCircuitSpec {
    int num_train = 0;
    int num_features = 0;
    int index_qubits = 0;
    int feature_qubits = 0;
    int total_qubits = 0;  // 1 + index_qubits + 2 * feature_qubits

    int padded_train() const { return 1 << index_qubits; }
    int ancilla_qubit() const { return 0; }
    int index_first() const { return 1; }
    int train_reg_first() const { return 1 + index_qubits; }
    int test_reg_first() const { return 1 + index_qubits + feature_qubits; }

    static QknnCircuitSpec for_data(int num_train, int num_features);
};

// Per-training-index scores; higher means closer to the test instance.
struct IndexScores {
    std::vector<double> values;  // one per genuine training index
    Modality modality = Modality::Classical;
    bool degenerate = false;         // no discriminating information (all equal)
    bool zero_count_branch = false;  // an ancilla outcome received no shots
};

// Ordered selection of the k highest-scoring training indices. Ties are
// broken by ascending training index in every modality.
struct NeighborSet {
    std::vector<int> indices;
    std::vector<double> scores;
    bool tie_policy_applied = false;  // selection boundary fell on a near-tie
};

// Builds the post-SWAP-test state over 1 + ceil(log2 N) + 2*ceil(log2 d)
// qubits: joint initialization of the index and training-feature registers,
// test-feature initialization, then H - Fredkins - H on the ancilla. Rows and
// test must be unit-norm; padded index slots carry zero amplitude.
QuantumState build_qknn_state(const FeatureMatrix& train_units, std::span<const double> test_unit,
                              int qubit_cap = kMaxQubits);

// Q(i) = P(i|0) - P(i|1) from the exact joint marginal of (ancilla, index).
IndexScores qknn_scores_statevector(const QuantumState& state, const QknnCircuitSpec& spec);

// Same quantity estimated from one batch of `shots` joint measurements.
// A branch with zero counts contributes 0 to every conditional and is
// flagged via zero_count_branch.
IndexScores qknn_scores_sampled(const QuantumState& state, const QknnCircuitSpec& spec, std::uint64_t shots,
                                RngStream& rng);

// Classical replacement: cosine similarity, or negated Euclidean distance.
IndexScores classical_knn_scores(const FeatureMatrix& train, std::span<const double> test, Metric metric);

NeighborSet extract_k_nearest(const IndexScores& scores, int k);

}  // namespace qpipe
