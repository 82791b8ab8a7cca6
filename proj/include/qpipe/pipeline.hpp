#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "qpipe/qbc.hpp"
#include "qpipe/qknn.hpp"

namespace qpipe {

// Per-stage execution modalities plus the stream seed of one prediction.
// Stage streams are derived from the seed, so a prediction is a pure
// function of its inputs and this struct.
struct ModalityConfig {
    Modality knn_modality = Modality::Classical;
    Modality classifier_modality = Modality::Classical;
    std::uint64_t shots = 0;  // used by simulation stages only
    std::uint64_t seed = 0;
};

struct PipelinePrediction {
    int label = 0;
    NeighborSet neighbors;
    std::optional<double> p1;       // present for quantum classifier stages
    bool second_model_used = false; // neighbor set contains both classes
    // diagnostics
    bool knn_degenerate = false;        // scores carried no information
    bool knn_zero_count_branch = false; // sampled branch with zero counts
    bool classifier_tie = false;        // vote sum within 1e-6 of zero
};

// One pass of the pipeline: unit-norm normalization of training rows and the
// test instance, the configured k-NN stage, neighbor extraction, then the
// configured classifier stage on the k selected neighbors. The training fold
// must already be min-max normalized.
PipelinePrediction run_pipeline(const FeatureMatrix& train, std::span<const int> labels,
                                std::span<const double> test, int k, const ModalityConfig& config,
                                int qubit_cap = kMaxQubits);

// The classifier applied to the whole training fold, without a k-NN stage.
PipelinePrediction run_classifier_standalone(const FeatureMatrix& train, std::span<const int> labels,
                                             std::span<const double> test, Modality modality,
                                             std::uint64_t shots, std::uint64_t seed,
                                             int qubit_cap = kMaxQubits);

}  // namespace qpipe
