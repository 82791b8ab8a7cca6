#include "qpipe/baselines.hpp"

#include <cmath>

namespace qpipe {

namespace {

BaselineResult select_neighbors(const FeatureMatrix& train, std::span<const int> labels,
                                std::span<const double> test, int k, Metric metric) {
    if (train.size() != labels.size()) {
        throw DimensionError("training rows and labels must be aligned");
    }
    const IndexScores scores = classical_knn_scores(train, test, metric);
    BaselineResult res;
    res.neighbors = extract_k_nearest(scores, k);
    bool has_pos = false;
    bool has_neg = false;
    for (int idx : res.neighbors.indices) {
        (labels[idx] > 0 ? has_pos : has_neg) = true;
    }
    res.mixed_neighbors = has_pos && has_neg;
    return res;
}

}  // namespace

BaselineResult knn_majority(const FeatureMatrix& train, std::span<const int> labels,
                            std::span<const double> test, int k, Metric metric) {
    BaselineResult res = select_neighbors(train, labels, test, k, metric);
    int vote = 0;
    for (int idx : res.neighbors.indices) {
        vote += labels[idx];
    }
    res.vote_tie = vote == 0;
    res.label = vote < 0 ? -1 : +1;
    return res;
}

BaselineResult knn_plus_classifier(const FeatureMatrix& train, std::span<const int> labels,
                                   std::span<const double> test, int k, Metric metric) {
    BaselineResult res = select_neighbors(train, labels, test, k, metric);
    double sum = 0.0;
    for (int idx : res.neighbors.indices) {
        sum += labels[idx] * cosine_similarity(train[idx], test);
    }
    res.vote_tie = std::abs(sum) <= 1e-6;
    res.label = sum < 0.0 ? -1 : +1;
    return res;
}

}  // namespace qpipe
