// Writes the packaged benchmark datasets under a data/ root. Everything is
// derived from one master seed, so the emitted CSV files are bit-stable.
//
// The three 01_iris_* files hold Fisher's measurements (with the two
// corrected instances); the remaining files are drawn from seeded generative
// recipes shaped like their namesakes: same instance counts, feature counts,
// class ratios and value ranges, with class structure tuned so the benchmark
// suite exercises the same regimes (near-separable, locally mixed, norm-coded
// classes, duplicated instances).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qpipe/rng.hpp"

namespace fs = std::filesystem;
using qpipe::RngStream;

namespace {

constexpr std::uint64_t kMasterSeed = 0x51c0ffee2024ULL;

struct Row {
    std::vector<double> features;
    int label = 0;
};

struct Cluster {
    std::vector<double> mean;
    double spread = 1.0;
    double weight = 1.0;
};

struct ClassDef {
    int label = 0;
    int count = 0;
    std::vector<Cluster> clusters;
};

struct SynthSpec {
    std::string name;
    std::vector<std::string> features;
    std::vector<double> sigma;
    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<int> decimals;
    std::vector<ClassDef> classes;
    // fraction of instances whose labels are exchanged pairwise across
    // classes; preserves class counts while planting local label mixing
    double label_swap = 0.0;
};

double round_to(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(v * scale) / scale;
}

std::vector<Row> generate(const SynthSpec& spec, RngStream& rng) {
    std::vector<Row> rows;
    for (const ClassDef& cls : spec.classes) {
        double total_weight = 0.0;
        for (const Cluster& c : cls.clusters) {
            total_weight += c.weight;
        }
        for (int i = 0; i < cls.count; ++i) {
            double pick = rng.uniform_double() * total_weight;
            const Cluster* cluster = &cls.clusters.back();
            for (const Cluster& c : cls.clusters) {
                if (pick < c.weight) {
                    cluster = &c;
                    break;
                }
                pick -= c.weight;
            }
            Row row;
            row.label = cls.label;
            row.features.resize(spec.features.size());
            for (std::size_t j = 0; j < row.features.size(); ++j) {
                double v = cluster->mean[j] + rng.gaussian() * spec.sigma[j] * cluster->spread;
                v = std::clamp(v, spec.lo[j], spec.hi[j]);
                row.features[j] = round_to(v, spec.decimals[j]);
            }
            rows.push_back(std::move(row));
        }
    }

    if (spec.label_swap > 0.0) {
        std::vector<std::size_t> pos;
        std::vector<std::size_t> neg;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            (rows[i].label > 0 ? pos : neg).push_back(i);
        }
        rng.shuffle(pos);
        rng.shuffle(neg);
        const std::size_t swaps = static_cast<std::size_t>(
            std::round(spec.label_swap * static_cast<double>(rows.size()) / 2.0));
        for (std::size_t s = 0; s < swaps && s < pos.size() && s < neg.size(); ++s) {
            std::swap(rows[pos[s]].label, rows[neg[s]].label);
        }
    }

    rng.shuffle(rows);
    return rows;
}

void write_csv(const fs::path& path, const std::vector<std::string>& features,
               const std::vector<int>& decimals, const std::vector<Row>& rows) {
    std::ofstream out(path);
    for (std::size_t j = 0; j < features.size(); ++j) {
        out << features[j] << ',';
    }
    out << "class\n";
    char buf[64];
    for (const Row& row : rows) {
        for (std::size_t j = 0; j < row.features.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.*f", decimals[j], row.features[j]);
            out << buf << ',';
        }
        out << row.label << '\n';
    }
}

// Stratified subsample preserving the requested per-class counts; used for
// the capped 15-qubit variants of the three larger datasets.
std::vector<Row> subsample(const std::vector<Row>& rows, int keep_pos, int keep_neg, RngStream& rng) {
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        (rows[i].label > 0 ? pos : neg).push_back(i);
    }
    rng.shuffle(pos);
    rng.shuffle(neg);
    std::vector<std::size_t> keep(pos.begin(), pos.begin() + keep_pos);
    keep.insert(keep.end(), neg.begin(), neg.begin() + keep_neg);
    std::sort(keep.begin(), keep.end());
    std::vector<Row> out;
    out.reserve(keep.size());
    for (std::size_t i : keep) {
        out.push_back(rows[i]);
    }
    return out;
}

// --- Fisher's iris measurements, two instances corrected ---

struct IrisRow {
    double sl, sw, pl, pw;
    int species;  // 0 setosa, 1 versicolor, 2 virginica
};

const std::array<IrisRow, 150> kIris = {{
    {5.1, 3.5, 1.4, 0.2, 0},
    {4.9, 3.0, 1.4, 0.2, 0},
    {4.7, 3.2, 1.3, 0.2, 0},
    {4.6, 3.1, 1.5, 0.2, 0},
    {5.0, 3.6, 1.4, 0.2, 0},
    {5.4, 3.9, 1.7, 0.4, 0},
    {4.6, 3.4, 1.4, 0.3, 0},
    {5.0, 3.4, 1.5, 0.2, 0},
    {4.4, 2.9, 1.4, 0.2, 0},
    {4.9, 3.1, 1.5, 0.1, 0},
    {5.4, 3.7, 1.5, 0.2, 0},
    {4.8, 3.4, 1.6, 0.2, 0},
    {4.8, 3.0, 1.4, 0.1, 0},
    {4.3, 3.0, 1.1, 0.1, 0},
    {5.8, 4.0, 1.2, 0.2, 0},
    {5.7, 4.4, 1.5, 0.4, 0},
    {5.4, 3.9, 1.3, 0.4, 0},
    {5.1, 3.5, 1.4, 0.3, 0},
    {5.7, 3.8, 1.7, 0.3, 0},
    {5.1, 3.8, 1.5, 0.3, 0},
    {5.4, 3.4, 1.7, 0.2, 0},
    {5.1, 3.7, 1.5, 0.4, 0},
    {4.6, 3.6, 1.0, 0.2, 0},
    {5.1, 3.3, 1.7, 0.5, 0},
    {4.8, 3.4, 1.9, 0.2, 0},
    {5.0, 3.0, 1.6, 0.2, 0},
    {5.0, 3.4, 1.6, 0.4, 0},
    {5.2, 3.5, 1.5, 0.2, 0},
    {5.2, 3.4, 1.4, 0.2, 0},
    {4.7, 3.2, 1.6, 0.2, 0},
    {4.8, 3.1, 1.6, 0.2, 0},
    {5.4, 3.4, 1.5, 0.4, 0},
    {5.2, 4.1, 1.5, 0.1, 0},
    {5.5, 4.2, 1.4, 0.2, 0},
    {4.9, 3.1, 1.5, 0.2, 0},
    {5.0, 3.2, 1.2, 0.2, 0},
    {5.5, 3.5, 1.3, 0.2, 0},
    {4.9, 3.6, 1.4, 0.1, 0},
    {4.4, 3.0, 1.3, 0.2, 0},
    {5.1, 3.4, 1.5, 0.2, 0},
    {5.0, 3.5, 1.3, 0.3, 0},
    {4.5, 2.3, 1.3, 0.3, 0},
    {4.4, 3.2, 1.3, 0.2, 0},
    {5.0, 3.5, 1.6, 0.6, 0},
    {5.1, 3.8, 1.9, 0.4, 0},
    {4.8, 3.0, 1.4, 0.3, 0},
    {5.1, 3.8, 1.6, 0.2, 0},
    {4.6, 3.2, 1.4, 0.2, 0},
    {5.3, 3.7, 1.5, 0.2, 0},
    {5.0, 3.3, 1.4, 0.2, 0},
    {7.0, 3.2, 4.7, 1.4, 1},
    {6.4, 3.2, 4.5, 1.5, 1},
    {6.9, 3.1, 4.9, 1.5, 1},
    {5.5, 2.3, 4.0, 1.3, 1},
    {6.5, 2.8, 4.6, 1.5, 1},
    {5.7, 2.8, 4.5, 1.3, 1},
    {6.3, 3.3, 4.7, 1.6, 1},
    {4.9, 2.4, 3.3, 1.0, 1},
    {6.6, 2.9, 4.6, 1.3, 1},
    {5.2, 2.7, 3.9, 1.4, 1},
    {5.0, 2.0, 3.5, 1.0, 1},
    {5.9, 3.0, 4.2, 1.5, 1},
    {6.0, 2.2, 4.0, 1.0, 1},
    {6.1, 2.9, 4.7, 1.4, 1},
    {5.6, 2.9, 3.6, 1.3, 1},
    {6.7, 3.1, 4.4, 1.4, 1},
    {5.6, 3.0, 4.5, 1.5, 1},
    {5.8, 2.7, 4.1, 1.0, 1},
    {6.2, 2.2, 4.5, 1.5, 1},
    {5.6, 2.5, 3.9, 1.1, 1},
    {5.9, 3.2, 4.8, 1.8, 1},
    {6.1, 2.8, 4.0, 1.3, 1},
    {6.3, 2.5, 4.9, 1.5, 1},
    {6.1, 2.8, 4.7, 1.2, 1},
    {6.4, 2.9, 4.3, 1.3, 1},
    {6.6, 3.0, 4.4, 1.4, 1},
    {6.8, 2.8, 4.8, 1.4, 1},
    {6.7, 3.0, 5.0, 1.7, 1},
    {6.0, 2.9, 4.5, 1.5, 1},
    {5.7, 2.6, 3.5, 1.0, 1},
    {5.5, 2.4, 3.8, 1.1, 1},
    {5.5, 2.4, 3.7, 1.0, 1},
    {5.8, 2.7, 3.9, 1.2, 1},
    {6.0, 2.7, 5.1, 1.6, 1},
    {5.4, 3.0, 4.5, 1.5, 1},
    {6.0, 3.4, 4.5, 1.6, 1},
    {6.7, 3.1, 4.7, 1.5, 1},
    {6.3, 2.3, 4.4, 1.3, 1},
    {5.6, 3.0, 4.1, 1.3, 1},
    {5.5, 2.5, 4.0, 1.3, 1},
    {5.5, 2.6, 4.4, 1.2, 1},
    {6.1, 3.0, 4.6, 1.4, 1},
    {5.8, 2.6, 4.0, 1.2, 1},
    {5.0, 2.3, 3.3, 1.0, 1},
    {5.6, 2.7, 4.2, 1.3, 1},
    {5.7, 3.0, 4.2, 1.2, 1},
    {5.7, 2.9, 4.2, 1.3, 1},
    {6.2, 2.9, 4.3, 1.3, 1},
    {5.1, 2.5, 3.0, 1.1, 1},
    {5.7, 2.8, 4.1, 1.3, 1},
    {6.3, 3.3, 6.0, 2.5, 2},
    {5.8, 2.7, 5.1, 1.9, 2},
    {7.1, 3.0, 5.9, 2.1, 2},
    {6.3, 2.9, 5.6, 1.8, 2},
    {6.5, 3.0, 5.8, 2.2, 2},
    {7.6, 3.0, 6.6, 2.1, 2},
    {4.9, 2.5, 4.5, 1.7, 2},
    {7.3, 2.9, 6.3, 1.8, 2},
    {6.7, 2.5, 5.8, 1.8, 2},
    {7.2, 3.6, 6.1, 2.5, 2},
    {6.5, 3.2, 5.1, 2.0, 2},
    {6.4, 2.7, 5.3, 1.9, 2},
    {6.8, 3.0, 5.5, 2.1, 2},
    {5.7, 2.5, 5.0, 2.0, 2},
    {5.8, 2.8, 5.1, 2.4, 2},
    {6.4, 3.2, 5.3, 2.3, 2},
    {6.5, 3.0, 5.5, 1.8, 2},
    {7.7, 3.8, 6.7, 2.2, 2},
    {7.7, 2.6, 6.9, 2.3, 2},
    {6.0, 2.2, 5.0, 1.5, 2},
    {6.9, 3.2, 5.7, 2.3, 2},
    {5.6, 2.8, 4.9, 2.0, 2},
    {7.7, 2.8, 6.7, 2.0, 2},
    {6.3, 2.7, 4.9, 1.8, 2},
    {6.7, 3.3, 5.7, 2.1, 2},
    {7.2, 3.2, 6.0, 1.8, 2},
    {6.2, 2.8, 4.8, 1.8, 2},
    {6.1, 3.0, 4.9, 1.8, 2},
    {6.4, 2.8, 5.6, 2.1, 2},
    {7.2, 3.0, 5.8, 1.6, 2},
    {7.4, 2.8, 6.1, 1.9, 2},
    {7.9, 3.8, 6.4, 2.0, 2},
    {6.4, 2.8, 5.6, 2.2, 2},
    {6.3, 2.8, 5.1, 1.5, 2},
    {6.1, 2.6, 5.6, 1.4, 2},
    {7.7, 3.0, 6.1, 2.3, 2},
    {6.3, 3.4, 5.6, 2.4, 2},
    {6.4, 3.1, 5.5, 1.8, 2},
    {6.0, 3.0, 4.8, 1.8, 2},
    {6.9, 3.1, 5.4, 2.1, 2},
    {6.7, 3.1, 5.6, 2.4, 2},
    {6.9, 3.1, 5.1, 2.3, 2},
    {5.8, 2.7, 5.1, 1.9, 2},
    {6.8, 3.2, 5.9, 2.3, 2},
    {6.7, 3.3, 5.7, 2.5, 2},
    {6.7, 3.0, 5.2, 2.3, 2},
    {6.3, 2.5, 5.0, 1.9, 2},
    {6.5, 3.0, 5.2, 2.0, 2},
    {6.2, 3.4, 5.4, 2.3, 2},
    {5.9, 3.0, 5.1, 1.8, 2},
}};

std::vector<Row> iris_pair(int species_a, int species_b) {
    std::vector<Row> rows;
    for (const IrisRow& r : kIris) {
        if (r.species == species_a || r.species == species_b) {
            rows.push_back({{r.sl, r.sw, r.pl, r.pw}, r.species == species_a ? +1 : -1});
        }
    }
    return rows;
}

// --- blood-donation counts: integer features, heavy duplication ---

std::vector<Row> make_transfusion(RngStream& rng) {
    std::vector<Row> rows;
    auto sample = [&](bool donor) {
        Row row;
        row.label = donor ? -1 : +1;
        double r;
        double f;
        if (donor) {
            r = std::round(std::abs(rng.gaussian()) * 3.0);
            f = std::round(std::exp(rng.gaussian() * 0.75 + 1.65));
        } else {
            r = std::round(std::abs(rng.gaussian()) * 9.0 + 2.0);
            f = std::round(std::exp(rng.gaussian() * 0.7 + 1.25));
        }
        r = std::clamp(r, 0.0, 74.0);
        f = std::clamp(f, 1.0, 50.0);
        double t = std::clamp(f * 3.0 + std::round(std::abs(rng.gaussian()) * 16.0) + r, r + 2.0, 98.0);
        row.features = {r, f, 250.0 * f, t};
        return row;
    };
    for (int i = 0; i < 570; ++i) {
        rows.push_back(sample(false));
    }
    for (int i = 0; i < 178; ++i) {
        rows.push_back(sample(true));
    }
    // duplicated feature vectors carrying both labels, as in donation records
    for (int j = 0; j < 12; ++j) {
        rows[570 + j].features = rows[j * 7].features;
    }
    rng.shuffle(rows);
    return rows;
}

SynthSpec vertebral_spec() {
    SynthSpec s;
    s.name = "03_vertebral_column_2C";
    s.features = {"pelvic_incidence", "pelvic_tilt", "lumbar_lordosis_angle",
                  "sacral_slope",     "pelvic_radius", "degree_spondylolisthesis"};
    s.sigma = {10.0, 6.0, 12.0, 8.0, 9.0, 8.0};
    s.lo = {26.0, -6.0, 14.0, 13.0, 70.0, -11.0};
    s.hi = {130.0, 49.0, 126.0, 121.0, 163.0, 418.0};
    s.decimals = {2, 2, 2, 2, 2, 2};
    // abnormal = disk-hernia cluster + spondylolisthesis cluster
    s.classes = {{+1, 210, {{{48.0, 17.0, 37.0, 31.0, 117.0, 9.0}, 1.0, 0.4},
                            {{72.0, 21.0, 64.0, 51.0, 115.0, 52.0}, 1.4, 0.6}}},
                 {-1, 100, {{{52.0, 13.0, 44.0, 39.0, 124.0, 2.5}, 1.0, 1.0}}}};
    s.label_swap = 0.05;
    return s;
}

SynthSpec seeds_spec() {
    SynthSpec s;
    s.name = "04_seeds_1_2";
    s.features = {"area", "perimeter", "compactness", "kernel_length",
                  "kernel_width", "asymmetry", "groove_length"};
    s.sigma = {1.1, 0.55, 0.016, 0.24, 0.18, 1.3, 0.27};
    s.lo = {10.5, 12.4, 0.80, 4.89, 2.63, 0.7, 4.5};
    s.hi = {21.2, 17.3, 0.92, 6.7, 4.1, 8.5, 6.6};
    s.decimals = {2, 2, 4, 3, 3, 3, 3};
    // the two grains share shape but differ in size, so the class signal
    // largely lives in the vector norm
    s.classes = {{+1, 70, {{{14.35, 14.3, 0.880, 5.51, 3.24, 2.7, 5.09}, 1.0, 1.0}}},
                 {-1, 70, {{{18.35, 16.14, 0.884, 6.15, 3.68, 3.6, 6.02}, 1.05, 1.0}}}};
    s.label_swap = 0.02;
    return s;
}

SynthSpec ecoli_spec() {
    SynthSpec s;
    s.name = "05_ecoli_cp_im";
    s.features = {"mcg", "gvh", "lip", "chg", "aac", "alm1", "alm2"};
    s.sigma = {0.14, 0.12, 0.02, 0.004, 0.11, 0.11, 0.12};
    s.lo = {0.0, 0.16, 0.48, 0.5, 0.0, 0.03, 0.0};
    s.hi = {0.89, 1.0, 1.0, 1.0, 0.88, 1.0, 0.99};
    s.decimals = {2, 2, 2, 2, 2, 2, 2};
    s.classes = {{+1, 143, {{{0.36, 0.40, 0.48, 0.50, 0.46, 0.33, 0.36}, 1.0, 1.0}}},
                 {-1, 77, {{{0.44, 0.45, 0.48, 0.50, 0.49, 0.72, 0.65}, 1.0, 1.0}}}};
    s.label_swap = 0.03;
    return s;
}

SynthSpec glasses_spec() {
    SynthSpec s;
    s.name = "06_glasses_1_2";
    s.features = {"refractive_index", "sodium", "magnesium", "aluminum", "silicon",
                  "potassium",        "calcium", "barium",    "iron"};
    s.sigma = {0.0022, 0.5, 0.55, 0.28, 0.55, 0.18, 0.65, 0.04, 0.055};
    s.lo = {1.5112, 10.7, 0.0, 0.29, 69.8, 0.0, 5.4, 0.0, 0.0};
    s.hi = {1.5339, 14.9, 4.49, 3.5, 75.4, 6.2, 16.2, 3.2, 0.51};
    s.decimals = {5, 2, 2, 2, 2, 2, 2, 2, 2};
    // float versus non-float window glass: nearly identical chemistry
    s.classes = {{+1, 76, {{{1.5177, 13.15, 3.38, 1.43, 72.65, 0.56, 8.62, 0.03, 0.06}, 1.0, 0.8},
                           {{1.5222, 12.9, 0.9, 1.22, 72.0, 0.42, 11.2, 0.0, 0.1}, 1.0, 0.2}}},
                 {-1, 70, {{{1.5186, 13.25, 3.5, 1.26, 72.6, 0.5, 8.83, 0.01, 0.05}, 1.0, 1.0}}}};
    s.label_swap = 0.08;
    return s;
}

SynthSpec breast_tissue_spec() {
    SynthSpec s;
    s.name = "07_breast_tissue_adi_fadmasgla";
    s.features = {"impedivity_zero", "phase_angle_500", "hf_slope", "impedance_distance",
                  "area",            "area_per_da",     "max_spectrum", "spectral_distance", "perimeter"};
    s.sigma = {130.0, 0.045, 0.045, 55.0, 5500.0, 24.0, 34.0, 55.0, 190.0};
    s.lo = {100.0, 0.01, -0.07, 19.6, 70.0, 3.0, 7.0, 10.0, 40.0};
    s.hi = {2800.0, 0.56, 0.47, 1063.0, 174480.0, 220.0, 1430.0, 975.0, 2896.0};
    s.decimals = {2, 4, 4, 2, 1, 2, 2, 2, 2};
    // merged fibro-adenoma / mastopathy / glandular block versus adipose
    s.classes = {{+1, 49, {{{255.0, 0.10, 0.07, 92.0, 2600.0, 26.0, 42.0, 72.0, 310.0}, 1.0, 0.33},
                           {{385.0, 0.16, 0.11, 142.0, 8200.0, 52.0, 78.0, 112.0, 490.0}, 1.0, 0.34},
                           {{545.0, 0.22, 0.16, 192.0, 17800.0, 86.0, 122.0, 152.0, 710.0}, 1.0, 0.33}}},
                 {-1, 22, {{{1690.0, 0.062, 0.025, 605.0, 89000.0, 142.0, 705.0, 500.0, 2010.0}, 1.0, 1.0}}}};
    return s;
}

SynthSpec breast_cancer_spec() {
    SynthSpec s;
    s.name = "08_breast_cancer";
    s.features = {"age", "bmi", "glucose", "insulin", "homa", "leptin", "adiponectin", "resistin", "mcp1"};
    s.sigma = {15.0, 4.5, 20.0, 8.0, 2.4, 17.0, 6.0, 10.5, 310.0};
    s.lo = {24.0, 18.3, 60.0, 2.4, 0.46, 4.3, 1.6, 3.2, 45.0};
    s.hi = {89.0, 38.6, 201.0, 58.5, 25.1, 90.3, 38.0, 82.1, 1698.0};
    s.decimals = {0, 4, 0, 3, 4, 4, 4, 4, 2};
    s.classes = {{+1, 64, {{{57.0, 27.0, 106.0, 12.5, 3.4, 28.0, 9.1, 17.3, 563.0}, 1.0, 1.0}}},
                 {-1, 52, {{{55.0, 28.2, 88.0, 7.0, 1.55, 27.0, 10.3, 11.6, 499.0}, 1.0, 1.0}}}};
    s.label_swap = 0.06;
    return s;
}

SynthSpec accent_spec() {
    SynthSpec s;
    s.name = "09_accent_recognition_uk_us";
    s.features = {"X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8", "X9", "X10", "X11", "X12"};
    s.sigma = {2.6, 2.6, 2.6, 2.6, 2.6, 2.6, 2.2, 2.2, 2.2, 1.8, 1.8, 1.8};
    s.lo = std::vector<double>(12, -40.0);
    s.hi = std::vector<double>(12, 40.0);
    s.decimals = std::vector<int>(12, 4);
    s.classes = {{+1, 165, {{{7.1, -6.2, 7.0, 7.5, -11.6, -13.2, -4.5, -0.1, 8.2, 2.1, -2.5, 0.9}, 1.0, 1.0}}},
                 {-1, 45, {{{9.2, -4.1, 8.9, 5.9, -9.1, -14.6, -6.3, 1.3, 7.0, 3.4, -1.2, -0.4}, 1.0, 1.0}}}};
    s.label_swap = 0.04;
    return s;
}

SynthSpec leaf_spec() {
    SynthSpec s;
    s.name = "10_leaf_11_9";
    s.features = {"eccentricity",  "aspect_ratio", "elongation",      "solidity",   "convexity",
                  "isoperimetric", "max_indent",   "lobedness",       "intensity",  "contrast",
                  "smoothness",    "third_moment", "uniformity",      "entropy"};
    s.sigma = {0.08, 0.45, 0.07, 0.05, 0.12, 0.09, 0.02, 0.7, 0.02, 0.04, 0.006, 0.002, 0.00006, 0.5};
    s.lo = {0.11, 1.0, 0.1, 0.4, 0.3, 0.03, 0.005, 0.001, 0.005, 0.01, 0.0003, 0.0002, 0.00001, 0.17};
    s.hi = {0.999, 19.0, 0.95, 0.994, 1.0, 0.86, 0.2, 7.2, 0.19, 0.28, 0.045, 0.03, 0.0006, 2.71};
    s.decimals = {5, 4, 5, 5, 5, 5, 5, 5, 5, 5, 6, 6, 7, 5};
    s.classes = {{+1, 16, {{{0.78, 2.1, 0.78, 0.92, 0.85, 0.35, 0.04, 0.8, 0.05, 0.11, 0.012, 0.004,
                             0.00012, 1.3}, 1.0, 1.0}}},
                 {-1, 14, {{{0.62, 1.5, 0.62, 0.97, 0.97, 0.55, 0.015, 0.25, 0.09, 0.17, 0.022, 0.008,
                             0.00022, 2.0}, 1.0, 1.0}}}};
    return s;
}

void emit_synth(const fs::path& dir, const SynthSpec& spec) {
    RngStream rng(qpipe::derive_seed(kMasterSeed, {qpipe::hash_tag(spec.name)}));
    write_csv(dir / (spec.name + ".csv"), spec.features, spec.decimals, generate(spec, rng));
}

void emit_synth_with_subsample(const fs::path& dir32, const fs::path& dir15, const SynthSpec& spec,
                               int keep_pos, int keep_neg) {
    RngStream rng(qpipe::derive_seed(kMasterSeed, {qpipe::hash_tag(spec.name)}));
    const std::vector<Row> full = generate(spec, rng);
    write_csv(dir32 / (spec.name + ".csv"), spec.features, spec.decimals, full);
    RngStream sub_rng(qpipe::derive_seed(kMasterSeed, {qpipe::hash_tag(spec.name), qpipe::hash_tag("sub")}));
    write_csv(dir15 / (spec.name + ".csv"), spec.features, spec.decimals,
              subsample(full, keep_pos, keep_neg, sub_rng));
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::path("data");
    const fs::path dir15 = root / "15_qubits";
    const fs::path dir32 = root / "32_qubits";
    fs::create_directories(dir15);
    fs::create_directories(dir32);

    const std::vector<std::string> iris_features{"sepal_length", "sepal_width", "petal_length",
                                                 "petal_width"};
    const std::vector<int> iris_decimals{1, 1, 1, 1};
    write_csv(dir15 / "01_iris_setosa_versicolor.csv", iris_features, iris_decimals, iris_pair(0, 1));
    write_csv(dir15 / "01_iris_setosa_virginica.csv", iris_features, iris_decimals, iris_pair(0, 2));
    write_csv(dir15 / "01_iris_versicolor_virginica.csv", iris_features, iris_decimals, iris_pair(1, 2));

    {
        RngStream rng(qpipe::derive_seed(kMasterSeed, {qpipe::hash_tag("02_transfusion")}));
        write_csv(dir15 / "02_transfusion.csv", {"recency", "frequency", "monetary", "time"},
                  {0, 0, 0, 0}, make_transfusion(rng));
    }

    emit_synth(dir15, vertebral_spec());
    emit_synth(dir15, seeds_spec());
    emit_synth(dir15, ecoli_spec());
    emit_synth_with_subsample(dir32, dir15, glasses_spec(), 42, 38);
    emit_synth(dir15, breast_tissue_spec());
    emit_synth_with_subsample(dir32, dir15, breast_cancer_spec(), 44, 36);
    emit_synth_with_subsample(dir32, dir15, accent_spec(), 63, 17);
    emit_synth(dir15, leaf_spec());

    std::cout << "datasets written under " << root.string() << "\n";
    return 0;
}
