#include "qpipe/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace qpipe {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace and CR
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

double parse_real(const std::string& cell, std::size_t row) {
    if (cell.empty()) {
        throw IngestionError("row " + std::to_string(row) + ": missing value");
    }
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size() || !std::isfinite(v)) {
        throw IngestionError("row " + std::to_string(row) + ": cannot parse '" + cell + "' as a real number");
    }
    return v;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IngestionError("cannot open dataset file " + path.string());
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw IngestionError(path.string() + ": empty file");
    }
    std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 2 || header.back() != "class") {
        throw IngestionError(path.string() + ": header must end with a label column named 'class'");
    }

    Dataset ds;
    ds.name = path.stem().string();
    ds.feature_names.assign(header.begin(), header.end() - 1);
    const std::size_t d = ds.feature_names.size();

    std::vector<std::string> raw_labels;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") {
            continue;
        }
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != d + 1) {
            throw IngestionError("row " + std::to_string(row) + ": expected " + std::to_string(d + 1) +
                                 " cells, found " + std::to_string(cells.size()));
        }
        std::vector<double> fv(d);
        for (std::size_t j = 0; j < d; ++j) {
            fv[j] = parse_real(cells[j], row);
        }
        if (cells.back().empty()) {
            throw IngestionError("row " + std::to_string(row) + ": missing label");
        }
        ds.features.push_back(std::move(fv));
        raw_labels.push_back(cells.back());
    }

    if (ds.features.size() < 2) {
        throw IngestionError(path.string() + ": dataset needs at least 2 instances");
    }

    std::set<std::string> distinct(raw_labels.begin(), raw_labels.end());
    if (distinct.size() != 2) {
        throw IngestionError(path.string() + ": expected exactly 2 distinct labels, found " +
                             std::to_string(distinct.size()));
    }
    std::string positive;
    if (distinct == std::set<std::string>{"-1", "1"}) {
        positive = "1";
    } else if (distinct == std::set<std::string>{"-1", "+1"}) {
        positive = "+1";
    } else {
        positive = *distinct.begin();  // lexicographically first -> +1
    }
    ds.labels.reserve(raw_labels.size());
    for (const std::string& l : raw_labels) {
        ds.labels.push_back(l == positive ? +1 : -1);
    }
    return ds;
}

NormalizationParams fit_minmax(const FeatureMatrix& train) {
    if (train.empty()) {
        throw DimensionError("fit_minmax needs a non-empty training matrix");
    }
    const std::size_t d = train.front().size();
    NormalizationParams p;
    p.minimum.assign(d, 0.0);
    p.range.assign(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        double lo = train.front()[j];
        double hi = train.front()[j];
        for (const auto& row : train) {
            if (row.size() != d) {
                throw DimensionError("ragged training matrix");
            }
            lo = std::min(lo, row[j]);
            hi = std::max(hi, row[j]);
        }
        p.minimum[j] = lo;
        p.range[j] = hi - lo;
    }
    return p;
}

std::vector<double> apply_minmax(const NormalizationParams& params, std::span<const double> instance) {
    if (instance.size() != params.minimum.size()) {
        throw DimensionError("instance has " + std::to_string(instance.size()) + " features, params expect " +
                             std::to_string(params.minimum.size()));
    }
    std::vector<double> out(instance.size());
    for (std::size_t j = 0; j < instance.size(); ++j) {
        if (params.range[j] == 0.0) {
            out[j] = 0.0;
        } else {
            out[j] = std::clamp((instance[j] - params.minimum[j]) / params.range[j], 0.0, 1.0);
        }
    }
    return out;
}

FeatureMatrix apply_minmax(const NormalizationParams& params, const FeatureMatrix& instances) {
    FeatureMatrix out;
    out.reserve(instances.size());
    for (const auto& row : instances) {
        out.push_back(apply_minmax(params, row));
    }
    return out;
}

std::vector<double> unit_norm(std::span<const double> instance) {
    std::vector<double> out(instance.begin(), instance.end());
    double n2 = 0.0;
    for (double v : out) {
        n2 += v * v;
    }
    if (n2 == 0.0) {
        std::fill(out.begin(), out.end(), 1e-6);
        n2 = 1e-12 * static_cast<double>(out.size());
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (double& v : out) {
        v *= inv;
    }
    return out;
}

FeatureMatrix unit_norm_rows(const FeatureMatrix& m) {
    FeatureMatrix out;
    out.reserve(m.size());
    for (const auto& row : m) {
        out.push_back(unit_norm(row));
    }
    return out;
}

QuantumState amplitude_encode(std::span<const double> unit_instance) {
    double n2 = 0.0;
    for (double v : unit_instance) {
        n2 += v * v;
    }
    if (std::abs(n2 - 1.0) > kNormTolerance) {
        throw NormalizationError("amplitude encoding requires a unit vector, squared norm is " +
                                 std::to_string(n2));
    }
    const int nq = std::max(1, qubits_for(unit_instance.size()));
    std::vector<Complex> amps(std::uint64_t{1} << nq, Complex{});
    for (std::size_t j = 0; j < unit_instance.size(); ++j) {
        amps[j] = unit_instance[j];
    }
    QuantumState s = QuantumState::zero(nq);
    s.initialize_register(0, nq, std::span<const Complex>(amps));
    return s;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("cosine operands differ in length");
    }
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) {
        return 0.0;  // zero-norm operand carries no direction
    }
    return dot / std::sqrt(na * nb);
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("euclidean operands differ in length");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
    }
    return std::sqrt(s);
}

}  // namespace qpipe
