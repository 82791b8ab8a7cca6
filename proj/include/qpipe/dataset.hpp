#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qpipe/errors.hpp"
#include "qpipe/statevector.hpp"

namespace qpipe {

using FeatureMatrix = std::vector<std::vector<double>>;

// Labeled binary-classification dataset with labels in {-1, +1}.
struct Dataset {
    std::string name;
    std::vector<std::string> feature_names;
    FeatureMatrix features;   // N x d
    std::vector<int> labels;  // length N

    std::size_t num_instances() const { return features.size(); }
    std::size_t num_features() const { return features.empty() ? 0 : features.front().size(); }
};

// CSV contract: UTF-8, header row, d feature columns of decimal reals
// followed by one label column named "class", no missing cells. Labels may be
// any two distinct tokens; {-1, 1} is kept as-is, otherwise the
// lexicographically first token maps to +1.
Dataset load_dataset(const std::filesystem::path& path);

// Per-feature affine rescaling parameters fitted on training data only.
struct NormalizationParams {
    std::vector<double> minimum;
    std::vector<double> range;
};

NormalizationParams fit_minmax(const FeatureMatrix& train);

// (x - min) / range per feature, clipped to [0, 1]; zero-range features map
// to 0.
FeatureMatrix apply_minmax(const NormalizationParams& params, const FeatureMatrix& instances);
std::vector<double> apply_minmax(const NormalizationParams& params, std::span<const double> instance);

// Rescales to unit norm. An all-zero instance first has every attribute
// replaced by 1e-6, so it normalizes to the uniform direction.
std::vector<double> unit_norm(std::span<const double> instance);

// Unit-norm row copy of a matrix.
FeatureMatrix unit_norm_rows(const FeatureMatrix& m);

// Loads a unit vector of length d into the amplitudes of a
// qubits_for(d)-qubit state; amplitudes past d are exactly zero.
QuantumState amplitude_encode(std::span<const double> unit_instance);

double cosine_similarity(std::span<const double> a, std::span<const double> b);
double euclidean_distance(std::span<const double> a, std::span<const double> b);

}  // namespace qpipe
