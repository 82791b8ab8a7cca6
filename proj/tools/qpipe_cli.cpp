#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qpipe/experiment.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::optional<std::string>& output,
            const std::optional<std::uint64_t>& seed, int workers) {
    qpipe::ExperimentConfig cfg = qpipe::parse_config(config_path);
    if (seed) {
        cfg.seed = *seed;
    }
    const std::filesystem::path out_dir = output ? std::filesystem::path(*output) : cfg.output_dir;

    const qpipe::ExperimentOutput out = qpipe::run_experiment(cfg, workers);
    qpipe::write_experiment_files(cfg, out, out_dir);

    std::cout << "wrote " << (out_dir / "results.json").string() << " (" << out.results.size()
              << " result rows";
    if (!out.comparisons.empty()) {
        std::cout << ", " << out.comparisons.size() << " comparisons";
    }
    std::cout << ")\n";
    return 0;
}

int cmd_compare(const std::vector<std::string>& files, const std::string& method_a,
                const std::string& method_b, const std::string& output) {
    qpipe::AccuracyTable table;
    for (const auto& f : files) {
        qpipe::AccuracyTable part = qpipe::load_accuracy_file(f);
        table.merge(part);
    }
    const qpipe::ComparisonOutput cmp = qpipe::compare_methods(table, method_a, method_b);
    qpipe::write_comparison_files(cmp, output);
    for (const auto& st : cmp.stats) {
        std::cout << "k=" << st.k << " n=" << st.n_pairs << " p=" << st.wilcoxon.p_value
                  << (st.wilcoxon.degenerate ? " (degenerate)" : "") << "\n";
    }
    return 0;
}

int cmd_validate(const std::string& config_path) {
    qpipe::parse_config(config_path);
    std::cout << "config ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum k-NN / binary-classifier pipeline benchmark driver"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> output_override;
    std::optional<std::uint64_t> seed_override;
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) {
        workers = 1;
    }

    CLI::App* run = app.add_subcommand("run", "execute an experiment config");
    run->add_option("--config", config_path, "experiment config file")->required();
    run->add_option("--output", output_override, "output directory (overrides config)");
    run->add_option("--seed", seed_override, "rng base seed (overrides config)");
    run->add_option("--workers", workers, "worker thread count");

    std::vector<std::string> cmp_files;
    std::string method_a;
    std::string method_b;
    std::string cmp_output = "comparison";
    CLI::App* compare = app.add_subcommand("compare", "pair two methods from result files");
    compare->add_option("--results", cmp_files, "results.json or external baseline CSV files")
        ->required()
        ->expected(-1);
    compare->add_option("--method-a", method_a, "first method id")->required();
    compare->add_option("--method-b", method_b, "second method id")->required();
    compare->add_option("--output", cmp_output, "output directory");

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate-config", "parse and validate a config");
    validate->add_option("--config", validate_path, "experiment config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, output_override, seed_override, std::max(workers, 1));
        }
        if (compare->parsed()) {
            return cmd_compare(cmp_files, method_a, method_b, cmp_output);
        }
        if (validate->parsed()) {
            return cmd_validate(validate_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
