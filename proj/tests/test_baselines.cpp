#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <vector>

#include "qpipe/baselines.hpp"
#include "qpipe/evaluation.hpp"
#include "qpipe/pipeline.hpp"

using namespace qpipe;

TEST_CASE("majority vote follows the neighbor labels") {
    const FeatureMatrix train{{0.0}, {0.1}, {0.2}, {0.9}};
    const std::vector<int> labels{+1, +1, -1, -1};
    const std::vector<double> test{0.05};

    const BaselineResult r3 = knn_majority(train, labels, test, 3, Metric::Euclidean);
    CHECK(r3.label == +1);  // neighbors 0,1,2 vote {+1,+1,-1}
    CHECK(r3.mixed_neighbors);
    CHECK_FALSE(r3.vote_tie);

    const BaselineResult r1 = knn_majority(train, labels, test, 1, Metric::Euclidean);
    CHECK(r1.label == +1);
    CHECK_FALSE(r1.mixed_neighbors);
}

TEST_CASE("k=1 on a duplicated test instance returns its label") {
    const FeatureMatrix train{{0.3, 0.7}, {0.9, 0.1}};
    const std::vector<int> labels{-1, +1};
    const std::vector<double> test{0.3, 0.7};
    CHECK(knn_majority(train, labels, test, 1, Metric::Euclidean).label == -1);
    CHECK(knn_majority(train, labels, test, 1, Metric::Cosine).label == -1);
}

TEST_CASE("even k vote ties resolve to +1 and are flagged") {
    const FeatureMatrix train{{0.0}, {1.0}};
    const std::vector<int> labels{-1, +1};
    const std::vector<double> test{0.5};
    const BaselineResult r = knn_majority(train, labels, test, 2, Metric::Euclidean);
    CHECK(r.label == +1);
    CHECK(r.vote_tie);
}

TEST_CASE("cosine and euclidean neighbor sets can disagree") {
    const FeatureMatrix train{{1.0, 0.0}, {10.0, 1.0}};
    const std::vector<int> labels{-1, +1};
    const std::vector<double> test{1.0, 0.1};
    // cosine picks the collinear (10,1); euclidean the nearby (1,0)
    CHECK(knn_majority(train, labels, test, 1, Metric::Cosine).label == +1);
    CHECK(knn_majority(train, labels, test, 1, Metric::Euclidean).label == -1);
    CHECK(knn_plus_classifier(train, labels, test, 1, Metric::Cosine).label == +1);
    CHECK(knn_plus_classifier(train, labels, test, 1, Metric::Euclidean).label == -1);
}

TEST_CASE("cosine knn+classifier equals the classical-classical pipeline off ties") {
    RngStream rng(19);
    FeatureMatrix train(30, std::vector<double>(6));
    std::vector<int> labels(30);
    for (int i = 0; i < 30; ++i) {
        labels[i] = i % 2 == 0 ? +1 : -1;
        for (double& v : train[i]) {
            v = rng.uniform_double();
        }
    }
    ModalityConfig cc;  // classical-classical
    for (int t = 0; t < 20; ++t) {
        std::vector<double> test(6);
        for (double& v : test) {
            v = rng.uniform_double();
        }
        for (int k : {1, 3, 5, 7}) {
            const BaselineResult base = knn_plus_classifier(train, labels, test, k, Metric::Cosine);
            const PipelinePrediction pipe = run_pipeline(train, labels, test, k, cc);
            if (!base.neighbors.tie_policy_applied && !pipe.neighbors.tie_policy_applied &&
                !base.vote_tie && !pipe.classifier_tie) {
                CHECK(base.label == pipe.label);
                CHECK(base.neighbors.indices == pipe.neighbors.indices);
            }
        }
    }
}

TEST_CASE("unanimous neighbors produce the unanimous label") {
    const FeatureMatrix train{{0.1, 0.1}, {0.12, 0.11}, {0.9, 0.95}};
    const std::vector<int> labels{-1, -1, +1};
    const std::vector<double> test{0.1, 0.12};
    CHECK(knn_plus_classifier(train, labels, test, 2, Metric::Euclidean).label == -1);
    CHECK(knn_majority(train, labels, test, 2, Metric::Euclidean).label == -1);
}

TEST_CASE("majority vote and cosine classifier agree on the packaged data") {
    // regression check: with a fixed metric the two label rules coincide on
    // every packaged fold
    const std::filesystem::path data_dir = std::filesystem::path(QPIPE_SOURCE_DIR) / "data/15_qubits";
    for (const char* name : {"05_ecoli_cp_im.csv", "06_glasses_1_2.csv"}) {
        const Dataset ds = load_dataset(data_dir / name);
        const FoldPlan plan = stratified_kfold(ds, 5, 13);
        for (Metric metric : {Metric::Cosine, Metric::Euclidean}) {
            for (int k : {3, 9}) {
                for (int fold = 0; fold < 5; ++fold) {
                    FeatureMatrix train_raw;
                    std::vector<int> labels;
                    for (std::size_t i : plan.train_indices(fold)) {
                        train_raw.push_back(ds.features[i]);
                        labels.push_back(ds.labels[i]);
                    }
                    const NormalizationParams norm = fit_minmax(train_raw);
                    const FeatureMatrix train = apply_minmax(norm, train_raw);
                    for (std::size_t i : plan.test_indices(fold)) {
                        const std::vector<double> test = apply_minmax(norm, ds.features[i]);
                        const BaselineResult vote = knn_majority(train, labels, test, k, metric);
                        const BaselineResult clf = knn_plus_classifier(train, labels, test, k, metric);
                        CHECK(vote.label == clf.label);
                    }
                }
            }
        }
    }
}

TEST_CASE("cosine ranking is invariant to positive rescaling") {
    RngStream rng(29);
    FeatureMatrix train(12, std::vector<double>(4));
    std::vector<int> labels(12, 1);
    for (auto& row : train) {
        for (double& v : row) {
            v = 0.05 + rng.uniform_double();
        }
    }
    std::vector<double> test{0.4, 0.2, 0.7, 0.3};

    FeatureMatrix scaled = train;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        const double c = 0.5 + 3.0 * rng.uniform_double();
        for (double& v : scaled[i]) {
            v *= c;
        }
    }
    std::vector<double> test_scaled = test;
    for (double& v : test_scaled) {
        v *= 7.5;
    }

    const BaselineResult a = knn_majority(train, labels, test, 5, Metric::Cosine);
    const BaselineResult b = knn_majority(scaled, labels, test_scaled, 5, Metric::Cosine);
    CHECK(a.neighbors.indices == b.neighbors.indices);
}
