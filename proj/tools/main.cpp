// vqremap command-line tool. Everything goes through the C API of the shared
// library; this file only parses arguments and forwards key/value settings.
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "vqremap.h"

namespace {

struct PendingSettings {
    std::string config_file;
    std::vector<std::pair<std::string, std::string>> values;
};

// Common training/sweep flags; each maps 1:1 to a configuration key.
void add_run_options(CLI::App* cmd, PendingSettings& pending) {
    cmd->add_option("--config", pending.config_file, "flat key=value config file");
    const auto add = [cmd, &pending](const std::string& flag, const std::string& key,
                                     const std::string& help) {
        cmd->add_option_function<std::string>(
               flag,
               [&pending, key](const std::string& value) {
                   pending.values.push_back({key, value});
               },
               help)
            ->type_name("TEXT");
    };
    add("--dataset", "dataset",
        "dataset name (abalone, banknote, glass, heart, diabetes, iris, iris-2class, seeds, "
        "wine)");
    add("--data-dir", "data_dir", "directory with UCI data files (default $VQREMAP_DATA_DIR)");
    add("--embedding", "embedding", "angle or amplitude");
    add("--remap", "remap", "none, clamp, tanh, arctan, sigmoid, elu or sin");
    add("--model", "model", "vqc or mlp");
    add("--layers", "layers", "variational layer count (default 6)");
    add("--lr", "lr", "learning rate (default 0.01)");
    add("--batch-size", "batch_size", "SGD batch size (default 5)");
    add("--epochs", "epochs", "training epochs (default 30)");
    add("--out", "out", "output directory (default results)");
    cmd->add_flag_function(
        "--reupload",
        [&pending](std::int64_t count) {
            if (count > 0) pending.values.push_back({"reupload", "1"});
        },
        "re-apply the embedding before every layer");
}

int fail(vqr_status status, const char* command) {
    std::fprintf(stderr, "vqremap %s: error: %s (%s)\n", command, vqr_last_error(),
                 vqr_status_name(status));
    return static_cast<int>(status);
}

int apply_and_call(vqr_config* config, const PendingSettings& pending, const char* command,
                   vqr_status (*entry)(const vqr_config*)) {
    if (!pending.config_file.empty()) {
        const vqr_status status = vqr_config_load_file(config, pending.config_file.c_str());
        if (status != VQR_OK) return fail(status, command);
    }
    // command-line flags win over the config file
    for (const auto& [key, value] : pending.values) {
        const vqr_status status = vqr_config_set(config, key.c_str(), value.c_str());
        if (status != VQR_OK) return fail(status, command);
    }
    const vqr_status status = entry(config);
    if (status != VQR_OK) return fail(status, command);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"variational quantum classifier training with weight re-mapping"};
    app.set_version_flag("--version", std::string(vqr_version()));
    app.require_subcommand(1);

    PendingSettings run_settings, sweep_settings, report_settings, anova_settings,
        plot_settings;

    CLI::App* cmd_run = app.add_subcommand("run", "train one configuration");
    add_run_options(cmd_run, run_settings);
    cmd_run->add_option_function<std::string>(
        "--seed",
        [&run_settings](const std::string& v) { run_settings.values.push_back({"seed", v}); },
        "run seed (default 0)");

    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "run a (datasets x remaps x seeds) grid and summarize");
    add_run_options(cmd_sweep, sweep_settings);
    const auto add_sweep = [&](const std::string& flag, const std::string& key,
                               const std::string& help) {
        cmd_sweep->add_option_function<std::string>(
               flag,
               [&sweep_settings, key](const std::string& value) {
                   sweep_settings.values.push_back({key, value});
               },
               help)
            ->type_name("TEXT");
    };
    add_sweep("--datasets", "datasets", "comma-separated dataset list");
    add_sweep("--embeddings", "embeddings", "comma-separated list or 'both'");
    add_sweep("--remaps", "remaps", "comma-separated list or 'all' (default all)");
    add_sweep("--seeds", "seeds", "seed list '0,1,2' or range '0..9' (default 0..9)");
    add_sweep("--workers", "workers", "parallel cells (default: hardware)");

    const auto add_results_options = [&](CLI::App* cmd, PendingSettings& pending) {
        cmd->add_option("--config", pending.config_file, "flat key=value config file");
        cmd->add_option_function<std::string>(
               "--results",
               [&pending](const std::string& v) { pending.values.push_back({"results", v}); },
               "results directory of a previous run/sweep")
            ->type_name("TEXT");
        cmd->add_option_function<std::string>(
               "--k",
               [&pending](const std::string& v) { pending.values.push_back({"k", v}); },
               "POC threshold factor (default 1)")
            ->type_name("TEXT");
    };

    CLI::App* cmd_report =
        app.add_subcommand("report", "emit convergence-diff and test-accuracy tables");
    add_results_options(cmd_report, report_settings);
    cmd_report->add_option_function<std::string>(
        "--anchor",
        [&report_settings](const std::string& v) {
            report_settings.values.push_back({"anchor", v});
        },
        "POC anchor: baseline (default) or self");

    CLI::App* cmd_anova = app.add_subcommand("anova", "one-way ANOVA of test accuracies");
    add_results_options(cmd_anova, anova_settings);

    CLI::App* cmd_plot = app.add_subcommand("plot", "learning-curve SVGs");
    add_results_options(cmd_plot, plot_settings);

    CLI11_PARSE(app, argc, argv);

    vqr_config* config = nullptr;
    vqr_status status = vqr_config_create(&config);
    if (status != VQR_OK) return fail(status, "init");

    int rc = 0;
    if (cmd_run->parsed()) rc = apply_and_call(config, run_settings, "run", vqr_run);
    else if (cmd_sweep->parsed()) rc = apply_and_call(config, sweep_settings, "sweep", vqr_sweep);
    else if (cmd_report->parsed())
        rc = apply_and_call(config, report_settings, "report", vqr_report);
    else if (cmd_anova->parsed()) rc = apply_and_call(config, anova_settings, "anova", vqr_anova);
    else if (cmd_plot->parsed()) rc = apply_and_call(config, plot_settings, "plot", vqr_plot);

    vqr_config_destroy(config);
    return rc;
}
