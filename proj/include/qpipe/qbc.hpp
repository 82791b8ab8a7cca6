#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qpipe/dataset.hpp"
#include "qpipe/statevector.hpp"

namespace qpipe {

// Register layout of the binary-classifier circuit: the SWAP-test triple
// (q0 measurement, q1 reference, q2 branch), the neighbor index register, the
// shared feature register, and the label qubit on the last wire.
struct QbcCircuitSpec {
    int num_train = 0;  // k, the neighbor count
    int num_features = 0;
    int index_qubits = 0;
    int feature_qubits = 0;
    int total_qubits = 0;  // 3 + index_qubits + feature_qubits + 1

    int padded_train() const { return 1 << index_qubits; }
    int measure_qubit() const { return 0; }
    int reference_qubit() const { return 1; }
    int branch_qubit() const { return 2; }
    int index_first() const { return 3; }
    int feature_first() const { return 3 + index_qubits; }
    int label_qubit() const { return 3 + index_qubits + feature_qubits; }

    static QbcCircuitSpec for_data(int num_train, int num_features);
};

// The k selected training instances with their labels. label_bit(i) is the
// basis-state encoding b_i = (1 - y_i) / 2 of label y_i.
struct LabeledNeighbors {
    FeatureMatrix features;  // k x d, unit rows
    std::vector<int> labels; // values in {-1, +1}

    int label_bit(int i) const { return (1 - labels.at(i)) / 2; }
    void validate() const;
};

// Builds the pre-measurement classifier state: q1 in |+>, the branch qubit
// entangled with index and features (training rows on branch 0, the test
// vector on branch 1), labels written with X-selected multi-controlled X
// gates bracketed by X on q2, the test-branch label rotated to |-> with a
// controlled X and a controlled H, then the one-Fredkin SWAP test.
QuantumState build_qbc_state(const LabeledNeighbors& neighbors, std::span<const double> test_unit,
                             int qubit_cap = kMaxQubits);

// Exact probability of measuring 1 on q0.
double qbc_p1_statevector(const QuantumState& state, const QbcCircuitSpec& spec);

// count(1) / shots from a seeded batch of measurements of q0.
double qbc_p1_sampled(const QuantumState& state, const QbcCircuitSpec& spec, std::uint64_t shots,
                      RngStream& rng);

// -1 iff p1 > 1/4, +1 otherwise (a tie at exactly 1/4 maps to +1).
int predict_label(double p1);

// sgn(sum_i y_i cos(x_i, x)) with a zero sum mapping to +1, mirroring the
// quantum tie rule. If `vote_sum` is non-null it receives the raw sum.
int classical_cosine_classifier(const LabeledNeighbors& neighbors, std::span<const double> test,
                                double* vote_sum = nullptr);

}  // namespace qpipe
