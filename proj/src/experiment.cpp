#include "qpipe/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

namespace qpipe {

using nlohmann::json;

std::string modality_name(Modality m) {
    switch (m) {
        case Modality::Classical:
            return "classical";
        case Modality::Statevector:
            return "statevector";
        case Modality::Simulation:
            return "simulation";
    }
    return "?";
}

Modality parse_modality(const std::string& name) {
    if (name == "classical") {
        return Modality::Classical;
    }
    if (name == "statevector") {
        return Modality::Statevector;
    }
    if (name == "simulation") {
        return Modality::Simulation;
    }
    throw ConfigError("unknown modality '" + name + "'");
}

std::string metric_name(Metric m) { return m == Metric::Cosine ? "cosine" : "euclidean"; }

Metric parse_metric(const std::string& name) {
    if (name == "cosine") {
        return Metric::Cosine;
    }
    if (name == "euclidean") {
        return Metric::Euclidean;
    }
    throw ConfigError("unknown metric '" + name + "'");
}

std::string method_kind_name(MethodKind k) {
    switch (k) {
        case MethodKind::Pipeline:
            return "pipeline";
        case MethodKind::ClassifierStandalone:
            return "classifier";
        case MethodKind::KnnMajority:
            return "knn";
        case MethodKind::KnnPlusClassifier:
            return "knn_plus_classifier";
    }
    return "?";
}

std::string default_method_id(const MethodSpec& spec) {
    switch (spec.kind) {
        case MethodKind::Pipeline:
            return "pipeline_" + modality_name(spec.knn_modality) + "_" +
                   modality_name(spec.classifier_modality);
        case MethodKind::ClassifierStandalone:
            return "classifier_" + modality_name(spec.modality);
        case MethodKind::KnnMajority:
            return "knn_" + metric_name(spec.metric);
        case MethodKind::KnnPlusClassifier:
            return "knn_plus_classifier_" + metric_name(spec.metric);
    }
    return "?";
}

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

MethodSpec parse_method(const json& m) {
    if (!m.is_object() || !m.contains("type")) {
        throw ConfigError("each method needs a 'type'");
    }
    const std::string type = m.at("type").get<std::string>();
    MethodSpec spec;
    if (type == "pipeline") {
        reject_unknown_keys(m, {"type", "knn", "classifier", "id"}, "pipeline method");
        spec.kind = MethodKind::Pipeline;
        spec.knn_modality = parse_modality(m.at("knn").get<std::string>());
        spec.classifier_modality = parse_modality(m.at("classifier").get<std::string>());
    } else if (type == "classifier") {
        reject_unknown_keys(m, {"type", "modality", "id"}, "classifier method");
        spec.kind = MethodKind::ClassifierStandalone;
        spec.modality = parse_modality(m.at("modality").get<std::string>());
    } else if (type == "knn") {
        reject_unknown_keys(m, {"type", "metric", "id"}, "knn method");
        spec.kind = MethodKind::KnnMajority;
        spec.metric = parse_metric(m.at("metric").get<std::string>());
    } else if (type == "knn_plus_classifier") {
        reject_unknown_keys(m, {"type", "metric", "id"}, "knn_plus_classifier method");
        spec.kind = MethodKind::KnnPlusClassifier;
        spec.metric = parse_metric(m.at("metric").get<std::string>());
    } else {
        throw ConfigError("unknown method type '" + type + "'");
    }
    spec.id = m.contains("id") ? m.at("id").get<std::string>() : default_method_id(spec);
    return spec;
}

}  // namespace

ExperimentConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in " + path.string() + ": " + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config root must be an object");
    }
    reject_unknown_keys(j,
                        {"datasets", "methods", "k_values", "num_folds", "fold_seed", "shots", "runs",
                         "seed", "output_dir", "qubit_cap", "comparisons", "record_predictions"},
                        "config");

    ExperimentConfig cfg;
    try {
        for (const auto& p : j.at("datasets")) {
            std::filesystem::path dp = p.get<std::string>();
            if (dp.is_relative()) {
                dp = path.parent_path() / dp;
            }
            cfg.dataset_paths.push_back(dp);
        }
        for (const auto& m : j.at("methods")) {
            cfg.methods.push_back(parse_method(m));
        }
        cfg.k_values = j.at("k_values").get<std::vector<int>>();
        cfg.num_folds = j.value("num_folds", 5);
        cfg.fold_seed = j.value("fold_seed", std::uint64_t{0});
        cfg.shots = j.value("shots", std::uint64_t{0});
        cfg.runs = j.value("runs", 1);
        cfg.seed = j.value("seed", std::uint64_t{0});
        cfg.output_dir = j.value("output_dir", std::string{"results"});
        cfg.qubit_cap = j.value("qubit_cap", kMaxQubits);
        cfg.record_predictions = j.value("record_predictions", false);
        if (j.contains("comparisons")) {
            for (const auto& c : j.at("comparisons")) {
                reject_unknown_keys(c, {"a", "b"}, "comparison");
                cfg.comparisons.push_back({c.at("a").get<std::string>(), c.at("b").get<std::string>()});
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError("config error in " + path.string() + ": " + e.what());
    }
    validate_config(cfg);
    return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.dataset_paths.empty()) {
        throw ConfigError("config lists no datasets");
    }
    if (cfg.methods.empty()) {
        throw ConfigError("config lists no methods");
    }
    if (cfg.k_values.empty()) {
        throw ConfigError("config lists no k values");
    }
    for (int k : cfg.k_values) {
        if (k < 1) {
            throw ConfigError("k values must be positive");
        }
    }
    if (cfg.num_folds < 2) {
        throw ConfigError("num_folds must be at least 2");
    }
    if (cfg.runs < 1) {
        throw ConfigError("runs must be at least 1");
    }
    if (cfg.qubit_cap < 1 || cfg.qubit_cap > kMaxQubits) {
        throw ConfigError("qubit_cap must lie in [1, " + std::to_string(kMaxQubits) + "]");
    }
    std::set<std::string> ids;
    bool any_simulation = false;
    for (const auto& m : cfg.methods) {
        if (!ids.insert(m.id).second) {
            throw ConfigError("duplicate method id '" + m.id + "'");
        }
        any_simulation = any_simulation || m.stochastic();
    }
    if (any_simulation && cfg.shots < 1) {
        throw ConfigError("a simulation modality requires shots >= 1");
    }
    for (const auto& c : cfg.comparisons) {
        if (!ids.contains(c.method_a) || !ids.contains(c.method_b)) {
            throw ConfigError("comparison references unknown method '" +
                              (ids.contains(c.method_a) ? c.method_b : c.method_a) + "'");
        }
    }
}

AccuracyTable accuracy_table(const std::vector<RunResult>& results) {
    AccuracyTable table;
    for (const auto& rr : results) {
        for (int f = 0; f < rr.num_folds; ++f) {
            table[{rr.method_id, rr.dataset_id, rr.k, f}] = rr.fold_accuracy[f];
        }
    }
    return table;
}

namespace {

AccuracyTable table_from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IngestionError("cannot parse " + path.string() + ": " + e.what());
    }
    AccuracyTable table;
    for (const auto& rr : j.at("results")) {
        const std::string method = rr.at("method").get<std::string>();
        const std::string dataset = rr.at("dataset").get<std::string>();
        const int k = rr.at("k").get<int>();
        for (const auto& fo : rr.at("folds")) {
            table[{method, dataset, k, fo.at("fold").get<int>()}] = fo.at("accuracy").get<double>();
        }
    }
    return table;
}

AccuracyTable table_from_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IngestionError("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw IngestionError(path.string() + ": empty file");
    }
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
                cell.pop_back();
            }
            cells.push_back(cell);
        }
        return cells;
    };
    const std::vector<std::string> header = split(line);
    if (header != std::vector<std::string>{"method", "dataset", "fold", "k", "accuracy"}) {
        throw IngestionError(path.string() + ": expected header method,dataset,fold,k,accuracy");
    }
    AccuracyTable table;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") {
            continue;
        }
        const std::vector<std::string> cells = split(line);
        if (cells.size() != 5) {
            throw IngestionError(path.string() + " row " + std::to_string(row) + ": expected 5 cells");
        }
        try {
            table[{cells[0], cells[1], std::stoi(cells[3]), std::stoi(cells[2])}] = std::stod(cells[4]);
        } catch (const std::exception&) {
            throw IngestionError(path.string() + " row " + std::to_string(row) + ": malformed values");
        }
    }
    return table;
}

}  // namespace

AccuracyTable load_accuracy_file(const std::filesystem::path& path) {
    if (path.extension() == ".json") {
        return table_from_json_file(path);
    }
    return table_from_csv_file(path);
}

ComparisonOutput compare_methods(const AccuracyTable& table, const std::string& method_a,
                                 const std::string& method_b) {
    ComparisonOutput out;
    out.method_a = method_a;
    out.method_b = method_b;

    std::set<int> ks;
    std::vector<std::string> missing;
    for (const auto& [key, acc] : table) {
        if (key.method != method_a) {
            continue;
        }
        AccuracyKey other{method_b, key.dataset, key.k, key.fold};
        const auto it = table.find(other);
        if (it == table.end()) {
            missing.push_back(method_b + "/" + key.dataset + "/k=" + std::to_string(key.k) +
                              "/fold=" + std::to_string(key.fold));
            continue;
        }
        out.rows.push_back({key.dataset, key.k, key.fold, acc, it->second});
        ks.insert(key.k);
    }
    if (!missing.empty()) {
        std::string msg = "missing counterpart keys:";
        for (const auto& m : missing) {
            msg += " " + m;
        }
        throw PairingError(msg);
    }
    if (out.rows.empty()) {
        throw PairingError("no keys found for method '" + method_a + "'");
    }

    for (int k : ks) {
        std::vector<double> a;
        std::vector<double> b;
        for (const auto& row : out.rows) {
            if (row.k == k) {
                a.push_back(row.accuracy_a);
                b.push_back(row.accuracy_b);
            }
        }
        ComparisonStats st;
        st.k = k;
        st.n_pairs = static_cast<int>(a.size());
        st.wilcoxon = wilcoxon_signed_rank(a, b);
        out.stats.push_back(st);
    }
    return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& config, int workers) {
    validate_config(config);

    std::vector<Dataset> datasets;
    datasets.reserve(config.dataset_paths.size());
    for (const auto& p : config.dataset_paths) {
        datasets.push_back(load_dataset(p));
    }
    std::vector<FoldPlan> plans;
    plans.reserve(datasets.size());
    for (const auto& ds : datasets) {
        plans.push_back(stratified_kfold(ds, config.num_folds, config.fold_seed));
    }

    EvalParams params;
    params.runs = config.runs;
    params.shots = config.shots;
    params.base_seed = config.seed;
    params.qubit_cap = config.qubit_cap;
    params.record_predictions = config.record_predictions;

    // Task grid. A k-independent method contributes (fold x run) tasks once;
    // everything else (k x fold x run).
    struct Task {
        std::size_t dataset;
        std::size_t method;
        int k;
        int fold;
        int run;
    };
    std::vector<Task> tasks;
    for (std::size_t di = 0; di < datasets.size(); ++di) {
        for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
            const MethodSpec& m = config.methods[mi];
            const int runs = m.stochastic() ? config.runs : 1;
            const std::size_t distinct_k = m.k_independent() ? 1 : config.k_values.size();
            for (std::size_t ki = 0; ki < distinct_k; ++ki) {
                for (int fold = 0; fold < config.num_folds; ++fold) {
                    for (int run = 0; run < runs; ++run) {
                        tasks.push_back({di, mi, config.k_values[ki], fold, run});
                    }
                }
            }
        }
    }

    std::vector<FoldOutcome> outcomes(tasks.size());
    std::vector<double> task_seconds(tasks.size(), 0.0);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(std::max(workers, 1));

    auto worker_fn = [&](int wi) {
        try {
            while (true) {
                const std::size_t t = next.fetch_add(1);
                if (t >= tasks.size()) {
                    return;
                }
                const Task& task = tasks[t];
                const auto start = std::chrono::steady_clock::now();
                outcomes[t] = evaluate_fold(config.methods[task.method], datasets[task.dataset],
                                            plans[task.dataset], task.k, task.fold, task.run, params);
                task_seconds[t] =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            }
        } catch (...) {
            errors[wi] = std::current_exception();
        }
    };

    if (workers <= 1) {
        worker_fn(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(worker_fn, w);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    // Deterministic assembly: merge task outcomes into RunResults keyed by
    // (method, dataset, k), then replicate k-independent methods per k.
    ExperimentOutput out;
    std::map<std::tuple<std::string, std::string, int>, RunResult> merged;
    std::map<std::string, double> timings;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        const Task& task = tasks[t];
        const MethodSpec& m = config.methods[task.method];
        const Dataset& ds = datasets[task.dataset];
        const auto key = std::make_tuple(m.id, ds.name, task.k);
        RunResult& rr = merged[key];
        if (rr.outcomes.empty()) {
            rr.method_id = m.id;
            rr.dataset_id = ds.name;
            rr.k = task.k;
            rr.num_folds = config.num_folds;
            rr.runs = m.stochastic() ? config.runs : 1;
            rr.outcomes.assign(rr.runs, std::vector<FoldOutcome>(config.num_folds));
        }
        rr.outcomes[task.run][task.fold] = outcomes[t];
        timings[m.id + "/" + ds.name + "/k=" + std::to_string(task.k)] += task_seconds[t];
    }
    for (auto& [key, rr] : merged) {
        rr.finalize();
        out.results.push_back(rr);
        const auto& [mid, dsname, k] = key;
        for (const auto& m : config.methods) {
            if (m.id == mid && m.k_independent()) {
                for (int other_k : config.k_values) {
                    if (other_k != k) {
                        RunResult copy = rr;
                        copy.k = other_k;
                        out.results.push_back(std::move(copy));
                        timings[mid + "/" + dsname + "/k=" + std::to_string(other_k)] = 0.0;
                    }
                }
            }
        }
    }
    std::sort(out.results.begin(), out.results.end(), [](const RunResult& a, const RunResult& b) {
        return std::tie(a.method_id, a.dataset_id, a.k) < std::tie(b.method_id, b.dataset_id, b.k);
    });
    out.timings_seconds = std::move(timings);

    const AccuracyTable table = accuracy_table(out.results);
    for (const auto& c : config.comparisons) {
        out.comparisons.push_back(compare_methods(table, c.method_a, c.method_b));
    }
    return out;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

std::string results_to_json(const ExperimentConfig& config, const std::vector<RunResult>& results,
                            const std::string& timestamp) {
    json meta;
    meta["version"] = kVersion;
    meta["timestamp"] = timestamp;
    meta["seed"] = config.seed;
    meta["fold_seed"] = config.fold_seed;
    meta["num_folds"] = config.num_folds;
    meta["k_values"] = config.k_values;
    meta["shots"] = config.shots;
    meta["runs"] = config.runs;
    meta["qubit_cap"] = config.qubit_cap;
    json ds = json::array();
    for (const auto& p : config.dataset_paths) {
        ds.push_back(p.stem().string());
    }
    meta["datasets"] = ds;
    json ms = json::array();
    for (const auto& m : config.methods) {
        ms.push_back(m.id);
    }
    meta["methods"] = ms;

    json jresults = json::array();
    for (const auto& rr : results) {
        json jr;
        jr["method"] = rr.method_id;
        jr["dataset"] = rr.dataset_id;
        jr["k"] = rr.k;
        jr["runs"] = rr.runs;
        json folds = json::array();
        for (int f = 0; f < rr.num_folds; ++f) {
            json jf;
            jf["fold"] = f;
            jf["accuracy"] = rr.fold_accuracy[f];
            jf["second_model_usage"] = rr.fold_usage[f];
            int ties = 0;
            int degenerate = 0;
            json acc_runs = json::array();
            for (const auto& run : rr.outcomes) {
                acc_runs.push_back(run[f].accuracy);
                ties += run[f].tie_count;
                degenerate += run[f].degenerate_count;
            }
            jf["accuracy_by_run"] = acc_runs;
            jf["tie_count"] = ties;
            jf["degenerate_count"] = degenerate;
            if (!rr.outcomes.empty() && !rr.outcomes.front()[f].predictions.empty()) {
                jf["predictions"] = rr.outcomes.front()[f].predictions;
            }
            folds.push_back(jf);
        }
        jr["folds"] = folds;
        jresults.push_back(jr);
    }

    json root;
    root["metadata"] = meta;
    root["results"] = jresults;
    return root.dump(2) + "\n";
}

void write_comparison_files(const ComparisonOutput& cmp, const std::filesystem::path& output_dir) {
    std::filesystem::create_directories(output_dir);
    const std::string base = cmp.method_a + "_vs_" + cmp.method_b;

    std::ofstream scatter(output_dir / ("scatter_" + base + ".csv"));
    scatter << "dataset,k,fold,accuracy_a,accuracy_b\n";
    std::vector<ComparisonRow> rows = cmp.rows;
    std::sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
        return std::tie(a.dataset, a.k, a.fold) < std::tie(b.dataset, b.k, b.fold);
    });
    for (const auto& r : rows) {
        scatter << r.dataset << ',' << r.k << ',' << r.fold << ',' << format_double(r.accuracy_a) << ','
                << format_double(r.accuracy_b) << '\n';
    }

    const std::filesystem::path stats_path = output_dir / "stats.csv";
    const bool fresh = !std::filesystem::exists(stats_path);
    std::ofstream stats(stats_path, std::ios::app);
    if (fresh) {
        stats << "comparison,k,n_pairs,n_nonzero,w_plus,p_value,degenerate,exact\n";
    }
    for (const auto& st : cmp.stats) {
        stats << base << ',' << st.k << ',' << st.n_pairs << ',' << st.wilcoxon.n_nonzero << ','
              << format_double(st.wilcoxon.statistic) << ',' << format_double(st.wilcoxon.p_value) << ','
              << (st.wilcoxon.degenerate ? 1 : 0) << ',' << (st.wilcoxon.exact ? 1 : 0) << '\n';
    }
}

void write_experiment_files(const ExperimentConfig& config, const ExperimentOutput& output,
                            const std::filesystem::path& output_dir) {
    std::filesystem::create_directories(output_dir);

    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));

    std::ofstream results(output_dir / "results.json");
    results << results_to_json(config, output.results, stamp);

    // stats.csv accumulates across comparisons; start clean
    std::filesystem::remove(output_dir / "stats.csv");
    for (const auto& cmp : output.comparisons) {
        write_comparison_files(cmp, output_dir);
    }

    std::ofstream timings(output_dir / "timings.csv");
    timings << "task,seconds\n";
    for (const auto& [key, secs] : output.timings_seconds) {
        timings << key << ',' << format_double(secs) << '\n';
    }
}

}  // namespace qpipe
