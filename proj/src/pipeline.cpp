#include "qpipe/pipeline.hpp"

#include <cmath>

namespace qpipe {

namespace {

// Vote sums closer to zero than this are flagged: the sign (and therefore the
// label) is not robust against the statevector round-off of P(1).
constexpr double kVoteTieEpsilon = 1e-6;

IndexScores knn_stage(const FeatureMatrix& train_units, std::span<const double> test_unit,
                      const ModalityConfig& config, int qubit_cap) {
    switch (config.knn_modality) {
        case Modality::Classical:
            return classical_knn_scores(train_units, test_unit, Metric::Cosine);
        case Modality::Statevector: {
            const QuantumState state = build_qknn_state(train_units, test_unit, qubit_cap);
            const QknnCircuitSpec spec = QknnCircuitSpec::for_data(static_cast<int>(train_units.size()),
                                                                   static_cast<int>(test_unit.size()));
            return qknn_scores_statevector(state, spec);
        }
        case Modality::Simulation: {
            const QuantumState state = build_qknn_state(train_units, test_unit, qubit_cap);
            const QknnCircuitSpec spec = QknnCircuitSpec::for_data(static_cast<int>(train_units.size()),
                                                                   static_cast<int>(test_unit.size()));
            RngStream rng(derive_seed(config.seed, {hash_tag("knn-stage")}));
            return qknn_scores_sampled(state, spec, config.shots, rng);
        }
    }
    throw ParameterError("unknown k-NN modality");
}

void classifier_stage(const LabeledNeighbors& neighbors, std::span<const double> test_unit,
                      Modality modality, std::uint64_t shots, std::uint64_t seed, int qubit_cap,
                      PipelinePrediction& out) {
    if (modality == Modality::Classical) {
        double vote = 0.0;
        out.label = classical_cosine_classifier(neighbors, test_unit, &vote);
        out.classifier_tie = std::abs(vote) <= kVoteTieEpsilon;
        return;
    }
    const QuantumState state = build_qbc_state(neighbors, test_unit, qubit_cap);
    const QbcCircuitSpec spec = QbcCircuitSpec::for_data(static_cast<int>(neighbors.features.size()),
                                                         static_cast<int>(test_unit.size()));
    double p1 = 0.0;
    if (modality == Modality::Statevector) {
        p1 = qbc_p1_statevector(state, spec);
    } else {
        RngStream rng(derive_seed(seed, {hash_tag("classifier-stage")}));
        p1 = qbc_p1_sampled(state, spec, shots, rng);
    }
    out.p1 = p1;
    out.label = predict_label(p1);
    // |1 - 4 p1| rescaled to the vote-sum scale of the classical model
    const double k = static_cast<double>(neighbors.features.size());
    out.classifier_tie = std::abs(1.0 - 4.0 * p1) * k * std::sqrt(2.0) <= kVoteTieEpsilon;
}

}  // namespace

PipelinePrediction run_pipeline(const FeatureMatrix& train, std::span<const int> labels,
                                std::span<const double> test, int k, const ModalityConfig& config,
                                int qubit_cap) {
    if (train.size() != labels.size()) {
        throw DimensionError("training rows and labels must be aligned");
    }
    if (k < 1 || static_cast<std::size_t>(k) > train.size()) {
        throw ParameterError("k must be in [1, " + std::to_string(train.size()) + "]");
    }

    // Unit-norm normalization runs for every modality, including
    // classical-classical.
    const FeatureMatrix train_units = unit_norm_rows(train);
    const std::vector<double> test_unit = unit_norm(test);

    const IndexScores scores = knn_stage(train_units, test_unit, config, qubit_cap);

    PipelinePrediction out;
    out.neighbors = extract_k_nearest(scores, k);
    out.knn_degenerate = scores.degenerate;
    out.knn_zero_count_branch = scores.zero_count_branch;

    LabeledNeighbors neighbors;
    neighbors.features.reserve(k);
    neighbors.labels.reserve(k);
    bool has_pos = false;
    bool has_neg = false;
    for (int idx : out.neighbors.indices) {
        neighbors.features.push_back(train_units[idx]);
        neighbors.labels.push_back(labels[idx]);
        (labels[idx] > 0 ? has_pos : has_neg) = true;
    }
    out.second_model_used = has_pos && has_neg;

    classifier_stage(neighbors, test_unit, config.classifier_modality, config.shots,
                     derive_seed(config.seed, {hash_tag("pipeline")}), qubit_cap, out);
    return out;
}

PipelinePrediction run_classifier_standalone(const FeatureMatrix& train, std::span<const int> labels,
                                             std::span<const double> test, Modality modality,
                                             std::uint64_t shots, std::uint64_t seed, int qubit_cap) {
    if (train.size() != labels.size()) {
        throw DimensionError("training rows and labels must be aligned");
    }
    if (train.empty()) {
        throw ParameterError("training fold is empty");
    }
    if (modality != Modality::Classical) {
        // Fail before any work if the whole-fold circuit cannot fit.
        const QbcCircuitSpec spec = QbcCircuitSpec::for_data(static_cast<int>(train.size()),
                                                             static_cast<int>(test.size()));
        if (spec.total_qubits > qubit_cap) {
            throw CapacityError("standalone classifier needs " + std::to_string(spec.total_qubits) +
                                " qubits, cap is " + std::to_string(qubit_cap));
        }
    }

    const FeatureMatrix train_units = unit_norm_rows(train);
    const std::vector<double> test_unit = unit_norm(test);

    PipelinePrediction out;
    out.neighbors.indices.resize(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
        out.neighbors.indices[i] = static_cast<int>(i);
    }
    out.second_model_used = true;

    LabeledNeighbors neighbors{train_units, {labels.begin(), labels.end()}};
    classifier_stage(neighbors, test_unit, modality, shots, derive_seed(seed, {hash_tag("standalone")}),
                     qubit_cap, out);
    return out;
}

}  // namespace qpipe
