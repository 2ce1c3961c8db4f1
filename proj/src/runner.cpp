#include "runner.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "error.hpp"
#include "report.hpp"
#include "textio.hpp"

namespace vqremap {

namespace fs = std::filesystem;

std::string_view model_name(ModelKind kind) { return kind == ModelKind::Vqc ? "vqc" : "mlp"; }

ModelKind model_from_name(std::string_view name) {
    if (name == "vqc") return ModelKind::Vqc;
    if (name == "mlp") return ModelKind::Mlp;
    throw Error(ErrorCode::Usage, "cli-runner",
                "unknown model '" + std::string(name) + "' (expected vqc or mlp)");
}

namespace {

[[noreturn]] void usage_error(const std::string& message) {
    throw Error(ErrorCode::Usage, "cli-runner", message);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        std::size_t next = value.find(',', pos);
        if (next == std::string::npos) next = value.size();
        if (next > pos) items.push_back(value.substr(pos, next - pos));
        pos = next + 1;
    }
    return items;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& value) {
    std::vector<std::uint64_t> seeds;
    const auto range = value.find("..");
    if (range != std::string::npos) {
        const auto lo = parse_long(value.substr(0, range), "seeds");
        const auto hi = parse_long(value.substr(range + 2), "seeds");
        if (hi < lo) usage_error("seed range is empty: " + value);
        for (long s = lo; s <= hi; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
        return seeds;
    }
    for (const auto& item : split_list(value)) {
        seeds.push_back(static_cast<std::uint64_t>(parse_long(item, "seeds")));
    }
    if (seeds.empty()) usage_error("empty seed list");
    return seeds;
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
    if (value == "0" || value == "false" || value == "off" || value == "no") return false;
    usage_error("boolean value expected for " + key + ", got '" + value + "'");
}

} // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "dataset") {
        schema_for(value); // validates the name
        dataset = value;
    } else if (key == "datasets") {
        datasets.clear();
        for (const auto& name : split_list(value)) {
            schema_for(name);
            datasets.push_back(name);
        }
    } else if (key == "embedding") {
        embedding = embedding_from_name(value);
    } else if (key == "embeddings") {
        embeddings.clear();
        if (value == "both") {
            embeddings = {EmbeddingKind::Angle, EmbeddingKind::Amplitude};
        } else {
            for (const auto& name : split_list(value)) {
                embeddings.push_back(embedding_from_name(name));
            }
        }
    } else if (key == "remap") {
        remap = remap_from_name(value);
    } else if (key == "remaps") {
        remaps.clear();
        if (value == "all") {
            remaps.assign(kAllRemapKinds.begin(), kAllRemapKinds.end());
        } else {
            for (const auto& name : split_list(value)) remaps.push_back(remap_from_name(name));
        }
    } else if (key == "reupload") {
        reupload = parse_bool(value, key);
    } else if (key == "model") {
        model = model_from_name(value);
    } else if (key == "layers") {
        layers = static_cast<int>(parse_long(value, key));
        if (layers < 1) usage_error("layers must be >= 1");
    } else if (key == "lr") {
        learning_rate = parse_double(value, key);
        if (learning_rate <= 0.0) usage_error("lr must be > 0");
    } else if (key == "batch_size") {
        batch_size = static_cast<int>(parse_long(value, key));
        if (batch_size < 1) usage_error("batch_size must be >= 1");
    } else if (key == "epochs") {
        epochs = static_cast<int>(parse_long(value, key));
        if (epochs < 1) usage_error("epochs must be >= 1");
    } else if (key == "seed") {
        seed = static_cast<std::uint64_t>(parse_long(value, key));
    } else if (key == "seeds") {
        seeds = parse_seed_list(value);
    } else if (key == "data_dir") {
        data_dir = value;
    } else if (key == "out") {
        out_dir = value;
    } else if (key == "results") {
        results_dir = value;
    } else if (key == "workers") {
        workers = static_cast<int>(parse_long(value, key));
        if (workers < 0) usage_error("workers must be >= 0");
    } else if (key == "k") {
        k = parse_double(value, key);
        if (k <= 0.0) usage_error("k must be > 0");
    } else if (key == "anchor") {
        if (value == "baseline") anchor = PocAnchor::Baseline;
        else if (value == "self") anchor = PocAnchor::Self;
        else usage_error("anchor must be baseline or self");
    } else {
        usage_error("unknown configuration key '" + key + "'");
    }
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cli-runner", "cannot read config file " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            usage_error("config file " + path + " line " + std::to_string(line_no) +
                        ": expected key=value");
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

std::string RunConfig::get(const std::string& key) const {
    if (key == "dataset") return dataset;
    if (key == "embedding") return std::string(embedding_name(embedding));
    if (key == "remap") return std::string(remap_name(remap));
    if (key == "reupload") return reupload ? "1" : "0";
    if (key == "model") return std::string(model_name(model));
    if (key == "layers") return std::to_string(layers);
    if (key == "lr") return fmt_double(learning_rate);
    if (key == "batch_size") return std::to_string(batch_size);
    if (key == "epochs") return std::to_string(epochs);
    if (key == "seed") return std::to_string(seed);
    if (key == "data_dir") return resolved_data_dir();
    if (key == "out") return out_dir;
    if (key == "results") return resolved_results_dir();
    if (key == "workers") return std::to_string(workers);
    if (key == "k") return fmt_double(k);
    if (key == "anchor") return anchor == PocAnchor::Baseline ? "baseline" : "self";
    usage_error("unknown configuration key '" + key + "'");
}

std::string RunConfig::resolved_data_dir() const {
    if (!data_dir.empty()) return data_dir;
    if (const char* env = std::getenv("VQREMAP_DATA_DIR")) return env;
    return "datasets";
}

std::string RunConfig::resolved_results_dir() const {
    return results_dir.empty() ? out_dir : results_dir;
}

std::string Cell::stem() const {
    std::ostringstream out;
    out << dataset << "_" << embedding_name(embedding) << "_" << remap_name(remap) << "_"
        << (reupload ? "reup" : "noreup") << "_" << model_name(model) << "_s" << seed;
    return out.str();
}

namespace {

void write_jsonl(const std::string& path, const TrainRecord& record) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cli-runner", "cannot write " + path);
    for (std::size_t e = 0; e < record.train_loss.size(); ++e) {
        out << "{\"epoch\":" << e << ",\"train_loss\":" << fmt_double(record.train_loss[e])
            << ",\"train_acc\":" << fmt_double(record.train_acc[e])
            << ",\"valid_loss\":" << fmt_double(record.valid_loss[e])
            << ",\"valid_acc\":" << fmt_double(record.valid_acc[e]) << "}\n";
    }
}

void write_meta(const std::string& path, const RunData& data, std::size_t n_train,
                std::size_t n_valid, std::size_t n_test) {
    const Cell& cell = data.cell;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cli-runner", "cannot write " + path);
    out << "{\"dataset\":\"" << cell.dataset << "\"";
    out << ",\"embedding\":\"" << embedding_name(cell.embedding) << "\"";
    out << ",\"remap\":\"" << remap_name(cell.remap) << "\"";
    out << ",\"approach\":\""
        << (cell.model == ModelKind::Mlp ? "Classical-NN" : approach_label(cell.remap)) << "\"";
    out << ",\"reupload\":" << (cell.reupload ? "true" : "false");
    out << ",\"model\":\"" << model_name(cell.model) << "\"";
    out << ",\"seed\":" << cell.seed;
    out << ",\"layers\":" << data.layers;
    out << ",\"lr\":" << fmt_double(data.learning_rate);
    out << ",\"batch_size\":" << data.batch_size;
    out << ",\"epochs\":" << data.epochs;
    out << ",\"parameter_count\":" << data.parameter_count;
    out << ",\"n_train\":" << n_train;
    out << ",\"n_valid\":" << n_valid;
    out << ",\"n_test\":" << n_test;
    out << ",\"weights_in_range\":" << (data.record.weights_in_range ? "true" : "false");
    out << ",\"test_acc\":" << fmt_double(data.record.test_acc);
    out << ",\"test_correct\":[";
    for (std::size_t i = 0; i < data.record.test_correct.size(); ++i) {
        out << (i ? "," : "") << static_cast<int>(data.record.test_correct[i]);
    }
    out << "]}\n";
}

} // namespace

RunData run_cell(const Cell& cell, const RunConfig& config) {
    const RawTable table = load_dataset(cell.dataset, config.resolved_data_dir());

    // The MLP sees amplitude-style [0, 1] features; angle scaling to [0, pi]
    // only makes sense for rotation gates.
    const EmbeddingKind scale_kind =
        cell.model == ModelKind::Mlp ? EmbeddingKind::Amplitude : cell.embedding;
    const SplitData splits = make_splits(table, scale_kind, cell.seed);

    TrainingConfig training;
    training.learning_rate = config.learning_rate;
    training.batch_size = config.batch_size;
    training.n_epochs = config.epochs;
    training.seed = cell.seed;
    training.approach = approach_label(cell.remap);

    const fs::path runs_dir = fs::path(config.out_dir) / "runs";
    fs::create_directories(runs_dir);
    const std::string stem = (runs_dir / cell.stem()).string();

    RunData data;
    data.cell = cell;
    data.layers = config.layers;
    data.learning_rate = config.learning_rate;
    data.batch_size = config.batch_size;
    data.epochs = config.epochs;

    Rng rng(cell.seed);
    if (cell.model == ModelKind::Vqc) {
        const auto spec = cell.embedding == EmbeddingKind::Angle
                              ? EmbeddingSpec::angle(table.n_features)
                              : EmbeddingSpec::amplitude(table.n_features);
        VqcModel model =
            VqcModel::make(spec, config.layers, table.n_classes, cell.remap, cell.reupload);
        model.init_params(rng);
        data.record = train_vqc(model, splits, training, rng);
        data.parameter_count = model.parameter_count();
        save_vqc_model(model, stem + ".model.txt");
    } else {
        if (cell.dataset != "iris-2class") {
            throw Error(ErrorCode::Config, "cli-runner",
                        "the mlp baseline is defined for iris-2class only");
        }
        MlpModel model = MlpModel::make(table.n_features, 6);
        model.init_params(rng);
        data.record = train_mlp(model, splits, training, rng);
        data.parameter_count = model.parameter_count();
        save_mlp_model(model, stem + ".model.txt");
    }

    write_jsonl(stem + ".jsonl", data.record);
    write_meta(stem + ".meta.json", data, splits.train_y.size(), splits.valid_y.size(),
               splits.test_y.size());
    return data;
}

const char* kSummaryHeader =
    "dataset,embedding,remap,reupload,model,seed,layers,lr,batch_size,epochs,"
    "final_train_loss,final_train_acc,final_valid_loss,final_valid_acc,"
    "poc_epoch,valid_acc_at_poc,test_acc,weights_in_range";

std::string summary_row(const RunData& data, double k) {
    const Cell& cell = data.cell;
    const TrainRecord& r = data.record;
    const PocResult poc = point_of_convergence(r.valid_loss, k);
    std::ostringstream row;
    row << cell.dataset << "," << embedding_name(cell.embedding) << "," << remap_name(cell.remap)
        << "," << (cell.reupload ? 1 : 0) << "," << model_name(cell.model) << "," << cell.seed
        << "," << data.layers << "," << fmt_double(data.learning_rate) << "," << data.batch_size
        << "," << data.epochs << "," << fmt_double(r.train_loss.back()) << ","
        << fmt_double(r.train_acc.back()) << "," << fmt_double(r.valid_loss.back()) << ","
        << fmt_double(r.valid_acc.back()) << "," << poc.epoch << ","
        << fmt_double(r.valid_acc[poc.epoch]) << "," << fmt_double(r.test_acc) << ","
        << (r.weights_in_range ? 1 : 0);
    return row.str();
}

void write_summary_csv(const std::string& out_dir, const std::vector<RunData>& runs, double k,
                       bool append) {
    const fs::path path = fs::path(out_dir) / "summary.csv";
    const bool fresh = !append || !fs::exists(path);
    std::ofstream out(path, append ? std::ios::app | std::ios::binary : std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cli-runner", "cannot write " + path.string());
    if (fresh) out << kSummaryHeader << "\n";
    for (const auto& data : runs) out << summary_row(data, k) << "\n";
}

void run(const RunConfig& config) {
    const Cell cell{config.dataset, config.embedding, config.remap,
                    config.reupload, config.model, config.seed};
    const RunData data = run_cell(cell, config);
    write_summary_csv(config.out_dir, {data}, config.k, /*append=*/true);
}

void sweep(const RunConfig& config) {
    const auto datasets =
        config.datasets.empty() ? std::vector<std::string>{config.dataset} : config.datasets;
    const auto embeddings = config.embeddings.empty()
                                ? std::vector<EmbeddingKind>{config.embedding}
                                : config.embeddings;
    // the MLP has no rotation weights, so remap kinds would only duplicate it
    const auto remaps =
        config.model == ModelKind::Mlp
            ? std::vector<RemapKind>{RemapKind::Identity}
        : config.remaps.empty()
            ? std::vector<RemapKind>(kAllRemapKinds.begin(), kAllRemapKinds.end())
            : config.remaps;
    auto seeds = config.seeds;
    if (seeds.empty()) {
        for (std::uint64_t s = 0; s < 10; ++s) seeds.push_back(s);
    }

    std::vector<Cell> cells;
    for (const auto& dataset : datasets) {
        for (const auto embedding : embeddings) {
            for (const auto remap : remaps) {
                for (const auto seed : seeds) {
                    cells.push_back(
                        {dataset, embedding, remap, config.reupload, config.model, seed});
                }
            }
        }
    }

    const fs::path runs_dir = fs::path(config.out_dir) / "runs";
    fs::create_directories(runs_dir);

    struct Slot {
        bool failed = false;
        std::string error;
    };
    std::vector<Slot> slots(cells.size());

    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    const auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell& cell = cells[i];
            const fs::path jsonl = runs_dir / (cell.stem() + ".jsonl");
            const fs::path meta = runs_dir / (cell.stem() + ".meta.json");
            try {
                if (fs::exists(jsonl) && fs::exists(meta)) {
                    std::lock_guard<std::mutex> lock(log_mutex);
                    std::cerr << "[sweep] skip " << cell.stem() << " (already complete)\n";
                    continue;
                }
                run_cell(cell, config);
                std::lock_guard<std::mutex> lock(log_mutex);
                std::cerr << "[sweep] done " << cell.stem() << "\n";
            } catch (const Error& e) {
                slots[i].failed = true;
                slots[i].error = e.what();
                std::lock_guard<std::mutex> lock(log_mutex);
                std::cerr << "[sweep] FAILED " << cell.stem() << ": " << e.what() << "\n";
            }
        }
    };

    int n_workers = config.workers;
    if (n_workers <= 0) {
        n_workers = static_cast<int>(std::thread::hardware_concurrency());
        if (n_workers < 1) n_workers = 1;
    }
    n_workers = std::min<int>(n_workers, static_cast<int>(cells.size()));
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::size_t failures = 0;
    std::ofstream failure_log;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!slots[i].failed) continue;
        if (failures == 0) {
            failure_log.open(fs::path(config.out_dir) / "failures.csv", std::ios::binary);
            failure_log << "cell,error\n";
        }
        failure_log << cells[i].stem() << ",\"" << slots[i].error << "\"\n";
        ++failures;
    }

    // Summaries rebuilt from disk, grid cells first and any other completed
    // runs after them by stem: identical output regardless of worker count,
    // resumed and manually started cells included.
    const auto runs = load_runs(config.out_dir);
    std::map<std::string, const RunData*> by_stem;
    for (const auto& data : runs) by_stem[data.cell.stem()] = &data;
    std::vector<RunData> ordered;
    for (const auto& cell : cells) {
        const auto it = by_stem.find(cell.stem());
        if (it == by_stem.end()) continue;
        ordered.push_back(*it->second);
        by_stem.erase(it);
    }
    for (const auto& [stem, data] : by_stem) ordered.push_back(*data);
    write_summary_csv(config.out_dir, ordered, config.k, /*append=*/false);

    RunConfig report_config = config;
    report_config.results_dir = config.out_dir;
    report(report_config);
    anova(report_config);

    if (failures > 0) {
        std::cerr << "[sweep] " << failures << " of " << cells.size()
                  << " cells failed; see failures.csv\n";
    }
}

} // namespace vqremap
