#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "remap.hpp"
#include "stats.hpp"
#include "training.hpp"

namespace vqremap {

enum class ModelKind { Vqc, Mlp };

std::string_view model_name(ModelKind kind);
ModelKind model_from_name(std::string_view name);

// Flat configuration shared by the CLI, the config file, and the C API.
// Every field maps to one key; set() validates eagerly so a bad value is
// reported at the point it is given.
struct RunConfig {
    std::string dataset = "iris";
    EmbeddingKind embedding = EmbeddingKind::Angle;
    RemapKind remap = RemapKind::Identity;
    bool reupload = false;
    ModelKind model = ModelKind::Vqc;
    int layers = 6;
    double learning_rate = 0.01;
    int batch_size = 5;
    int epochs = 30;
    std::uint64_t seed = 0;
    std::string data_dir; // empty: $VQREMAP_DATA_DIR or "datasets"
    std::string out_dir = "results";
    std::string results_dir; // report/anova/plot input; empty: out_dir

    // sweep grid
    std::vector<std::string> datasets;     // empty: {dataset}
    std::vector<EmbeddingKind> embeddings; // empty: {embedding}
    std::vector<RemapKind> remaps;         // empty: all seven
    std::vector<std::uint64_t> seeds;      // empty: 0..9
    int workers = 0;                       // 0: hardware concurrency

    // report knobs
    double k = 1.0;
    PocAnchor anchor = PocAnchor::Baseline;

    void set(const std::string& key, const std::string& value);
    void load_file(const std::string& path);
    std::string get(const std::string& key) const;

    std::string resolved_data_dir() const;
    std::string resolved_results_dir() const;
};

// One sweep grid point; doubles as the resume-skip identity.
struct Cell {
    std::string dataset;
    EmbeddingKind embedding = EmbeddingKind::Angle;
    RemapKind remap = RemapKind::Identity;
    bool reupload = false;
    ModelKind model = ModelKind::Vqc;
    std::uint64_t seed = 0;

    std::string stem() const;
};

// A completed run: the cell, the per-run hyperparameters it was trained with,
// and the record. Round-trips through <stem>.jsonl + <stem>.meta.json.
struct RunData {
    Cell cell;
    int layers = 6;
    double learning_rate = 0.01;
    int batch_size = 5;
    int epochs = 30;
    int parameter_count = 0;
    TrainRecord record;
};

// Executes one training cell and writes <stem>.jsonl / .meta.json / .model.txt
// under <out_dir>/runs.
RunData run_cell(const Cell& cell, const RunConfig& config);

// run subcommand: one cell from the scalar config fields plus a summary row.
void run(const RunConfig& config);

// sweep subcommand: full grid with resume-skip, then report + anova CSVs.
void sweep(const RunConfig& config);

std::string summary_row(const RunData& data, double k);
void write_summary_csv(const std::string& out_dir, const std::vector<RunData>& runs, double k,
                       bool append);
extern const char* kSummaryHeader;

} // namespace vqremap
