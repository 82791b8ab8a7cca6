#include "qpipe/qbc.hpp"

#include <algorithm>
#include <cmath>

namespace qpipe {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

}  // namespace

QbcCircuitSpec QbcCircuitSpec::for_data(int num_train, int num_features) {
    if (num_train < 1) {
        throw ParameterError("classifier needs at least 1 training instance");
    }
    if (num_features < 1) {
        throw ParameterError("classifier needs at least 1 feature");
    }
    QbcCircuitSpec spec;
    spec.num_train = num_train;
    spec.num_features = num_features;
    spec.index_qubits = qubits_for(static_cast<std::uint64_t>(num_train));
    spec.feature_qubits = std::max(1, qubits_for(static_cast<std::uint64_t>(num_features)));
    spec.total_qubits = 3 + spec.index_qubits + spec.feature_qubits + 1;
    return spec;
}

void LabeledNeighbors::validate() const {
    if (features.empty() || features.size() != labels.size()) {
        throw DimensionError("neighbor features and labels must be non-empty and aligned");
    }
    for (int y : labels) {
        if (y != -1 && y != 1) {
            throw ParameterError("labels must be -1 or +1");
        }
    }
    for (const auto& row : features) {
        double n2 = 0.0;
        for (double v : row) {
            n2 += v * v;
        }
        if (std::abs(n2 - 1.0) > kNormTolerance) {
            throw NormalizationError("neighbor rows must be unit-norm");
        }
    }
}

QuantumState build_qbc_state(const LabeledNeighbors& neighbors, std::span<const double> test_unit,
                             int qubit_cap) {
    neighbors.validate();
    const int k = static_cast<int>(neighbors.features.size());
    const int d = static_cast<int>(test_unit.size());
    const QbcCircuitSpec spec = QbcCircuitSpec::for_data(k, d);
    if (spec.total_qubits > qubit_cap) {
        throw CapacityError("classifier circuit needs " + std::to_string(spec.total_qubits) +
                            " qubits, cap is " + std::to_string(qubit_cap));
    }

    QuantumState state = QuantumState::zero(spec.total_qubits);

    // Slice 1: q1 to |+>; q2 jointly initialized with index and features.
    // Branch q2=0 holds the training superposition, branch q2=1 the test
    // vector replicated over the k genuine index slots; padded slots stay at
    // zero amplitude and the normalization uses the genuine k.
    const std::vector<Complex> plus{kInvSqrt2, kInvSqrt2};
    state.initialize_register(spec.reference_qubit(), 1, std::span<const Complex>(plus));

    const std::uint64_t feat_dim = std::uint64_t{1} << spec.feature_qubits;
    const std::uint64_t branch_dim = static_cast<std::uint64_t>(spec.padded_train()) * feat_dim;
    std::vector<Complex> joint(2 * branch_dim, Complex{});
    const double amp = 1.0 / std::sqrt(2.0 * static_cast<double>(k));
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(neighbors.features[i].size()) != d) {
            throw DimensionError("neighbor row " + std::to_string(i) + " has wrong feature count");
        }
        for (int j = 0; j < d; ++j) {
            joint[static_cast<std::uint64_t>(i) * feat_dim + j] = neighbors.features[i][j] * amp;
            joint[branch_dim + static_cast<std::uint64_t>(i) * feat_dim + j] = test_unit[j] * amp;
        }
    }
    state.initialize_register(spec.branch_qubit(), 1 + spec.index_qubits + spec.feature_qubits,
                              std::span<const Complex>(joint));

    // Slice 2: write the training labels. X on q2 exposes the training
    // branch; for every neighbor carrying label -1 the index pattern is
    // selected with X gates and the label qubit flipped with a
    // multi-controlled X over q2 and the whole index register.
    std::vector<int> controls;
    controls.push_back(spec.branch_qubit());
    for (int q = 0; q < spec.index_qubits; ++q) {
        controls.push_back(spec.index_first() + q);
    }
    const std::vector<int> all_ones(controls.size(), 1);

    state.x(spec.branch_qubit());
    for (int i = 0; i < k; ++i) {
        if (neighbors.label_bit(i) == 0) {
            continue;
        }
        std::vector<int> flipped;
        for (int q = 0; q < spec.index_qubits; ++q) {
            const int bit = (i >> (spec.index_qubits - 1 - q)) & 1;
            if (bit == 0) {
                flipped.push_back(spec.index_first() + q);
            }
        }
        for (int q : flipped) {
            state.x(q);
        }
        state.mcx(controls, all_ones, spec.label_qubit());
        for (int q : flipped) {
            state.x(q);
        }
    }
    state.x(spec.branch_qubit());

    // Slice 3: rotate the test-branch label to |-> with CX then CH from q2.
    const std::vector<int> branch_control{spec.branch_qubit()};
    const std::vector<int> one{1};
    state.mcx(branch_control, one, spec.label_qubit());
    state.ch(spec.branch_qubit(), spec.label_qubit());

    // Slice 4: SWAP test between q1 and q2.
    apply_swap_test(state, spec.measure_qubit(), spec.reference_qubit(), spec.branch_qubit(), 1);
    return state;
}

double qbc_p1_statevector(const QuantumState& state, const QbcCircuitSpec& spec) {
    const std::vector<int> q{spec.measure_qubit()};
    return state.marginals(q)[1];
}

double qbc_p1_sampled(const QuantumState& state, const QbcCircuitSpec& spec, std::uint64_t shots,
                      RngStream& rng) {
    if (shots < 1) {
        throw ParameterError("shots must be >= 1");
    }
    const std::vector<int> q{spec.measure_qubit()};
    const MeasurementCounts mc = state.sample(q, shots, rng);
    return static_cast<double>(mc.counts[1]) / static_cast<double>(shots);
}

int predict_label(double p1) {
    if (p1 < 0.0 || p1 > 1.0) {
        throw ParameterError("p1 must lie in [0, 1]");
    }
    return p1 > 0.25 ? -1 : +1;
}

int classical_cosine_classifier(const LabeledNeighbors& neighbors, std::span<const double> test,
                                double* vote_sum) {
    if (neighbors.features.empty() || neighbors.features.size() != neighbors.labels.size()) {
        throw DimensionError("neighbor features and labels must be non-empty and aligned");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < neighbors.features.size(); ++i) {
        sum += neighbors.labels[i] * cosine_similarity(neighbors.features[i], test);
    }
    if (vote_sum != nullptr) {
        *vote_sum = sum;
    }
    return sum < 0.0 ? -1 : +1;
}

}  // namespace qpipe
