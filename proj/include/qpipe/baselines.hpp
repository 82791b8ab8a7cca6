#pragma once

#include <span>

#include "qpipe/qknn.hpp"

namespace qpipe {

struct BaselineResult {
    int label = 0;
    NeighborSet neighbors;
    bool mixed_neighbors = false;  // neighbor set contains both classes
    bool vote_tie = false;         // majority vote or cosine sum was a tie
};

// Plain k-NN with majority vote. Neighbor ties break by ascending index,
// vote ties (possible for even k) resolve to +1 and are flagged. Operates on
// the data as given: no unit-norm preprocessing.
BaselineResult knn_majority(const FeatureMatrix& train, std::span<const int> labels,
                            std::span<const double> test, int k, Metric metric);

// k-NN neighbor selection followed by the cosine-sum classifier, again
// without unit-norm preprocessing.
BaselineResult knn_plus_classifier(const FeatureMatrix& train, std::span<const int> labels,
                                   std::span<const double> test, int k, Metric metric);

}  // namespace qpipe
