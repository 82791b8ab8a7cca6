#include "qpipe/qknn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qpipe {

namespace {

// Probability below which an ancilla branch is treated as impossible. The
// 1-branch probability is (1 - C) / 2 with C the mean squared cosine, so this
// only triggers when every training row coincides with the test instance.
constexpr double kBranchEpsilon = 1e-13;

// Relative gap under which two scores at the selection boundary count as tied.
constexpr double kTieEpsilon = 1e-9;

void check_unit_rows(const FeatureMatrix& rows) {
    for (const auto& row : rows) {
        double n2 = 0.0;
        for (double v : row) {
            n2 += v * v;
        }
        if (std::abs(n2 - 1.0) > kNormTolerance) {
            throw NormalizationError("training rows must be unit-norm");
        }
    }
}

}  // namespace

QknnCircuitSpec QknnCircuitSpec::for_data(int num_train, int num_features) {
    if (num_train < 2) {
        throw ParameterError("quantum k-NN needs at least 2 training instances");
    }
    if (num_features < 1) {
        throw ParameterError("quantum k-NN needs at least 1 feature");
    }
    QknnCircuitSpec spec;
    spec.num_train = num_train;
    spec.num_features = num_features;
    spec.index_qubits = qubits_for(static_cast<std::uint64_t>(num_train));
    spec.feature_qubits = std::max(1, qubits_for(static_cast<std::uint64_t>(num_features)));
    spec.total_qubits = 1 + spec.index_qubits + 2 * spec.feature_qubits;
    return spec;
}

QuantumState build_qknn_state(const FeatureMatrix& train_units, std::span<const double> test_unit,
                              int qubit_cap) {
    const int n = static_cast<int>(train_units.size());
    const int d = static_cast<int>(test_unit.size());
    const QknnCircuitSpec spec = QknnCircuitSpec::for_data(n, d);
    if (spec.total_qubits > qubit_cap) {
        throw CapacityError("k-NN circuit needs " + std::to_string(spec.total_qubits) +
                            " qubits, cap is " + std::to_string(qubit_cap));
    }
    check_unit_rows(train_units);

    QuantumState state = QuantumState::zero(spec.total_qubits);

    // Index and training-feature registers are entangled, so they are
    // initialized jointly: amplitude x_i[j] / sqrt(N) at |i>|j>, zero in the
    // padded index slots.
    const std::uint64_t feat_dim = std::uint64_t{1} << spec.feature_qubits;
    std::vector<Complex> joint(static_cast<std::uint64_t>(spec.padded_train()) * feat_dim, Complex{});
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(train_units[i].size()) != d) {
            throw DimensionError("training row " + std::to_string(i) + " has wrong feature count");
        }
        for (int j = 0; j < d; ++j) {
            joint[static_cast<std::uint64_t>(i) * feat_dim + j] = train_units[i][j] * inv_sqrt_n;
        }
    }
    state.initialize_register(spec.index_first(), spec.index_qubits + spec.feature_qubits,
                              std::span<const Complex>(joint));

    std::vector<Complex> test_amps(feat_dim, Complex{});
    for (int j = 0; j < d; ++j) {
        test_amps[j] = test_unit[j];
    }
    state.initialize_register(spec.test_reg_first(), spec.feature_qubits, std::span<const Complex>(test_amps));

    apply_swap_test(state, spec.ancilla_qubit(), spec.train_reg_first(), spec.test_reg_first(),
                    spec.feature_qubits);
    return state;
}

namespace {

std::vector<int> ancilla_and_index(const QknnCircuitSpec& spec) {
    std::vector<int> qubits;
    qubits.reserve(1 + spec.index_qubits);
    qubits.push_back(spec.ancilla_qubit());
    for (int q = 0; q < spec.index_qubits; ++q) {
        qubits.push_back(spec.index_first() + q);
    }
    return qubits;
}

}  // namespace

IndexScores qknn_scores_statevector(const QuantumState& state, const QknnCircuitSpec& spec) {
    const std::vector<int> qubits = ancilla_and_index(spec);
    const std::vector<double> joint = state.marginals(qubits);
    const std::uint64_t slots = std::uint64_t{1} << spec.index_qubits;

    double p0 = 0.0;
    double p1 = 0.0;
    for (std::uint64_t i = 0; i < slots; ++i) {
        p0 += joint[i];
        p1 += joint[slots + i];
    }
    if (p0 <= kBranchEpsilon) {
        throw DegenerateDistributionError("ancilla-0 branch has vanishing probability");
    }

    IndexScores scores;
    scores.modality = Modality::Statevector;
    scores.values.assign(spec.num_train, 0.0);
    if (p1 <= kBranchEpsilon) {
        // Every training row coincides with the test instance; Q carries no
        // information and all indices tie at zero.
        scores.degenerate = true;
        return scores;
    }
    for (int i = 0; i < spec.num_train; ++i) {
        scores.values[i] = joint[i] / p0 - joint[slots + i] / p1;
    }
    return scores;
}

IndexScores qknn_scores_sampled(const QuantumState& state, const QknnCircuitSpec& spec, std::uint64_t shots,
                                RngStream& rng) {
    if (shots < 1) {
        throw ParameterError("shots must be >= 1");
    }
    const std::vector<int> qubits = ancilla_and_index(spec);
    const MeasurementCounts mc = state.sample(qubits, shots, rng);
    const std::uint64_t slots = std::uint64_t{1} << spec.index_qubits;

    std::uint64_t c0 = 0;
    std::uint64_t c1 = 0;
    for (std::uint64_t i = 0; i < slots; ++i) {
        c0 += mc.counts[i];
        c1 += mc.counts[slots + i];
    }

    IndexScores scores;
    scores.modality = Modality::Simulation;
    scores.values.assign(spec.num_train, 0.0);
    scores.zero_count_branch = (c0 == 0 || c1 == 0);
    for (int i = 0; i < spec.num_train; ++i) {
        const double pc0 = c0 == 0 ? 0.0 : static_cast<double>(mc.counts[i]) / static_cast<double>(c0);
        const double pc1 = c1 == 0 ? 0.0 : static_cast<double>(mc.counts[slots + i]) / static_cast<double>(c1);
        scores.values[i] = pc0 - pc1;
    }
    return scores;
}

IndexScores classical_knn_scores(const FeatureMatrix& train, std::span<const double> test, Metric metric) {
    IndexScores scores;
    scores.modality = Modality::Classical;
    scores.values.reserve(train.size());
    for (const auto& row : train) {
        if (row.size() != test.size()) {
            throw DimensionError("training row and test instance differ in feature count");
        }
        if (metric == Metric::Cosine) {
            scores.values.push_back(cosine_similarity(row, test));
        } else {
            scores.values.push_back(-euclidean_distance(row, test));
        }
    }
    return scores;
}

NeighborSet extract_k_nearest(const IndexScores& scores, int k) {
    const int n = static_cast<int>(scores.values.size());
    if (k < 1 || k > n) {
        throw ParameterError("k must be in [1, " + std::to_string(n) + "], got " + std::to_string(k));
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores.values[a] != scores.values[b]) {
            return scores.values[a] > scores.values[b];
        }
        return a < b;
    });

    NeighborSet set;
    set.indices.assign(order.begin(), order.begin() + k);
    set.scores.reserve(k);
    for (int idx : set.indices) {
        set.scores.push_back(scores.values[idx]);
    }

    if (k < n) {
        const double spread = scores.values[order.front()] - scores.values[order.back()];
        const double boundary_gap = scores.values[order[k - 1]] - scores.values[order[k]];
        set.tie_policy_applied = spread <= 0.0 || boundary_gap <= kTieEpsilon * spread;
    }
    return set;
}

}  // namespace qpipe
