#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qpipe/baselines.hpp"
#include "qpipe/evaluation.hpp"
#include "qpipe/experiment.hpp"
#include "qpipe/pipeline.hpp"

namespace py = pybind11;
using namespace qpipe;

namespace {

py::dict prediction_to_dict(const PipelinePrediction& p) {
    py::dict d;
    d["label"] = p.label;
    d["neighbors"] = p.neighbors.indices;
    d["scores"] = p.neighbors.scores;
    d["second_model_used"] = p.second_model_used;
    d["tie"] = p.neighbors.tie_policy_applied;
    if (p.p1) {
        d["p1"] = *p.p1;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_qpipe, m) {
    m.doc() = "statevector engine for the quantum k-NN / cosine-classifier pipeline";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "QpipeError");

    py::class_<QuantumState>(m, "QuantumState")
        .def_static("zero", &QuantumState::zero, py::arg("num_qubits"))
        .def_property_readonly("num_qubits", &QuantumState::num_qubits)
        .def("amplitudes",
             [](const QuantumState& s) {
                 return std::vector<Complex>(s.amplitudes().begin(), s.amplitudes().end());
             })
        .def("initialize_register",
             [](QuantumState& s, int first, int count, const std::vector<Complex>& amps) {
                 s.initialize_register(first, count, std::span<const Complex>(amps));
             },
             py::arg("first"), py::arg("count"), py::arg("amplitudes"))
        .def("h", &QuantumState::h, py::arg("qubit"))
        .def("x", &QuantumState::x, py::arg("qubit"))
        .def("ch", &QuantumState::ch, py::arg("control"), py::arg("target"))
        .def("fredkin", &QuantumState::fredkin, py::arg("control"), py::arg("a"), py::arg("b"))
        .def("mcx",
             [](QuantumState& s, const std::vector<int>& controls, const std::vector<int>& pattern,
                int target) { s.mcx(controls, pattern, target); },
             py::arg("controls"), py::arg("pattern"), py::arg("target"))
        .def("marginals",
             [](const QuantumState& s, const std::vector<int>& qubits) {
                 return marginals_as_map(s, qubits);
             },
             py::arg("qubits"))
        .def("sample",
             [](const QuantumState& s, const std::vector<int>& qubits, std::uint64_t shots,
                std::uint64_t seed) {
                 RngStream rng(seed);
                 std::map<std::string, std::uint64_t> out;
                 for (const auto& [bits, count] : s.sample(qubits, shots, rng).to_map()) {
                     out[bits] = count;
                 }
                 return out;
             },
             py::arg("qubits"), py::arg("shots"), py::arg("seed"));

    m.def("fidelity",
          [](const std::vector<Complex>& u, const std::vector<Complex>& v) {
              return fidelity(std::span<const Complex>(u), std::span<const Complex>(v));
          },
          py::arg("u"), py::arg("v"));

    m.def("unit_norm",
          [](const std::vector<double>& x) { return unit_norm(x); }, py::arg("instance"));

    m.def("amplitude_encode",
          [](const std::vector<double>& x) { return amplitude_encode(x); }, py::arg("unit_instance"));

    m.def("qknn_scores",
          [](const FeatureMatrix& train, const std::vector<double>& test, const std::string& modality,
             std::uint64_t shots, std::uint64_t seed) {
              const FeatureMatrix units = unit_norm_rows(train);
              const std::vector<double> test_unit = unit_norm(test);
              const Modality mod = parse_modality(modality);
              if (mod == Modality::Classical) {
                  return classical_knn_scores(units, test_unit, Metric::Cosine).values;
              }
              const QuantumState state = build_qknn_state(units, test_unit);
              const QknnCircuitSpec spec = QknnCircuitSpec::for_data(static_cast<int>(train.size()),
                                                                     static_cast<int>(test.size()));
              if (mod == Modality::Statevector) {
                  return qknn_scores_statevector(state, spec).values;
              }
              RngStream rng(seed);
              return qknn_scores_sampled(state, spec, shots, rng).values;
          },
          py::arg("train"), py::arg("test"), py::arg("modality") = "statevector", py::arg("shots") = 1024,
          py::arg("seed") = 0);

    m.def("run_pipeline",
          [](const FeatureMatrix& train, const std::vector<int>& labels, const std::vector<double>& test,
             int k, const std::string& knn_modality, const std::string& classifier_modality,
             std::uint64_t shots, std::uint64_t seed) {
              ModalityConfig cfg;
              cfg.knn_modality = parse_modality(knn_modality);
              cfg.classifier_modality = parse_modality(classifier_modality);
              cfg.shots = shots;
              cfg.seed = seed;
              return prediction_to_dict(run_pipeline(train, labels, test, k, cfg));
          },
          py::arg("train"), py::arg("labels"), py::arg("test"), py::arg("k"),
          py::arg("knn_modality") = "classical", py::arg("classifier_modality") = "classical",
          py::arg("shots") = 1024, py::arg("seed") = 0);

    m.def("run_classifier",
          [](const FeatureMatrix& train, const std::vector<int>& labels, const std::vector<double>& test,
             const std::string& modality, std::uint64_t shots, std::uint64_t seed, int qubit_cap) {
              return prediction_to_dict(run_classifier_standalone(train, labels, test,
                                                                  parse_modality(modality), shots, seed,
                                                                  qubit_cap));
          },
          py::arg("train"), py::arg("labels"), py::arg("test"), py::arg("modality") = "statevector",
          py::arg("shots") = 1024, py::arg("seed") = 0, py::arg("qubit_cap") = kMaxQubits);

    m.def("knn_majority",
          [](const FeatureMatrix& train, const std::vector<int>& labels, const std::vector<double>& test,
             int k, const std::string& metric) {
              return knn_majority(train, labels, test, k, parse_metric(metric)).label;
          },
          py::arg("train"), py::arg("labels"), py::arg("test"), py::arg("k"),
          py::arg("metric") = "cosine");

    m.def("stratified_kfold",
          [](const std::vector<int>& labels, int num_folds, std::uint64_t seed) {
              Dataset ds;
              ds.name = "in-memory";
              ds.labels = labels;
              ds.features.assign(labels.size(), {0.0});
              return stratified_kfold(ds, num_folds, seed).fold_of;
          },
          py::arg("labels"), py::arg("num_folds"), py::arg("seed") = 0);

    m.def("wilcoxon_signed_rank",
          [](const std::vector<double>& x, const std::vector<double>& y) {
              const WilcoxonResult r = wilcoxon_signed_rank(x, y);
              py::dict d;
              d["p_value"] = r.p_value;
              d["statistic"] = r.statistic;
              d["n_nonzero"] = r.n_nonzero;
              d["degenerate"] = r.degenerate;
              d["exact"] = r.exact;
              return d;
          },
          py::arg("x"), py::arg("y"));

    m.def("load_dataset",
          [](const std::string& path) {
              const Dataset ds = load_dataset(path);
              py::dict d;
              d["name"] = ds.name;
              d["features"] = ds.features;
              d["labels"] = ds.labels;
              d["feature_names"] = ds.feature_names;
              return d;
          },
          py::arg("path"));
}
