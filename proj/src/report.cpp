#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "svg_plot.hpp"
#include "textio.hpp"

namespace vqremap {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void usage_error(const std::string& message) {
    throw Error(ErrorCode::Usage, "cli-runner", message);
}

RunData load_one(const fs::path& meta_path) {
    std::ifstream meta_in(meta_path);
    if (!meta_in) throw Error(ErrorCode::Io, "cli-runner", "cannot read " + meta_path.string());
    json meta = json::parse(meta_in);

    RunData data;
    data.cell.dataset = meta.at("dataset").get<std::string>();
    data.cell.embedding = embedding_from_name(meta.at("embedding").get<std::string>());
    data.cell.remap = remap_from_name(meta.at("remap").get<std::string>());
    data.cell.reupload = meta.at("reupload").get<bool>();
    data.cell.model = model_from_name(meta.at("model").get<std::string>());
    data.cell.seed = meta.at("seed").get<std::uint64_t>();
    data.layers = meta.at("layers").get<int>();
    data.learning_rate = meta.at("lr").get<double>();
    data.batch_size = meta.at("batch_size").get<int>();
    data.epochs = meta.at("epochs").get<int>();
    data.parameter_count = meta.at("parameter_count").get<int>();
    data.record.weights_in_range = meta.at("weights_in_range").get<bool>();
    data.record.test_acc = meta.at("test_acc").get<double>();
    for (const auto& c : meta.at("test_correct")) {
        data.record.test_correct.push_back(c.get<int>() ? 1 : 0);
    }

    fs::path jsonl_path = meta_path;
    jsonl_path.replace_extension(); // strip .json
    jsonl_path.replace_extension(".jsonl"); // strip .meta, add .jsonl
    std::ifstream jsonl_in(jsonl_path);
    if (!jsonl_in) {
        throw Error(ErrorCode::Io, "cli-runner", "cannot read " + jsonl_path.string());
    }
    std::string line;
    while (std::getline(jsonl_in, line)) {
        if (line.empty()) continue;
        json epoch = json::parse(line);
        data.record.train_loss.push_back(epoch.at("train_loss").get<double>());
        data.record.train_acc.push_back(epoch.at("train_acc").get<double>());
        data.record.valid_loss.push_back(epoch.at("valid_loss").get<double>());
        data.record.valid_acc.push_back(epoch.at("valid_acc").get<double>());
    }
    if (data.record.train_loss.empty()) {
        throw Error(ErrorCode::Ingest, "cli-runner", "empty run file " + jsonl_path.string());
    }
    return data;
}

// stable grouping keys
struct GroupKey {
    std::string dataset;
    RemapKind remap;
    bool operator<(const GroupKey& other) const {
        if (dataset != other.dataset) return dataset < other.dataset;
        return remap < other.remap;
    }
};

// Plain angle, plain amplitude, and amplitude with re-uploading are distinct
// embedding methods; tables never mix runs across them.
struct Method {
    EmbeddingKind kind;
    bool reupload;
    bool operator<(const Method& other) const {
        if (kind != other.kind) return kind < other.kind;
        return reupload < other.reupload;
    }
    std::string suffix() const {
        return std::string(embedding_name(kind)) + (reupload ? "_reup" : "");
    }
};

std::string csv_path(const RunConfig& config, const std::string& base, const Method& method) {
    return (fs::path(config.resolved_results_dir()) / (base + "_" + method.suffix() + ".csv"))
        .string();
}

std::set<Method> methods_present(const std::vector<RunData>& runs) {
    std::set<Method> methods;
    for (const auto& data : runs) methods.insert({data.cell.embedding, data.cell.reupload});
    return methods;
}

std::vector<const RunData*> select(const std::vector<RunData>& runs, const Method& method) {
    std::vector<const RunData*> out;
    for (const auto& data : runs) {
        if (data.cell.embedding == method.kind && data.cell.reupload == method.reupload &&
            data.cell.model == ModelKind::Vqc) {
            out.push_back(&data);
        }
    }
    return out;
}

} // namespace

std::vector<RunData> load_runs(const std::string& results_dir) {
    const fs::path runs_dir = fs::path(results_dir) / "runs";
    if (!fs::is_directory(runs_dir)) {
        usage_error("no runs directory under " + results_dir);
    }
    std::vector<fs::path> meta_files;
    for (const auto& entry : fs::directory_iterator(runs_dir)) {
        const auto name = entry.path().filename().string();
        if (name.size() > 10 && name.substr(name.size() - 10) == ".meta.json") {
            meta_files.push_back(entry.path());
        }
    }
    std::sort(meta_files.begin(), meta_files.end());
    if (meta_files.empty()) usage_error("no completed runs under " + runs_dir.string());
    std::vector<RunData> runs;
    runs.reserve(meta_files.size());
    for (const auto& path : meta_files) runs.push_back(load_one(path));
    return runs;
}

void report(const RunConfig& config) {
    const auto runs = load_runs(config.resolved_results_dir());

    for (const auto& method : methods_present(runs)) {
        const auto selected = select(runs, method);

        std::set<std::string> datasets;
        for (const auto* data : selected) datasets.insert(data->cell.dataset);

        // ---- convergence_diff (Tables 1-2 analog) ----
        std::ofstream conv(csv_path(config, "convergence_diff", method), std::ios::binary);
        conv << "dataset,approach,metric,value,ci_halfwidth\n";
        std::map<RemapKind, std::vector<double>> per_approach_means;
        for (const auto& dataset : datasets) {
            std::map<std::uint64_t, const RunData*> baselines;
            for (const auto* data : selected) {
                if (data->cell.dataset == dataset && data->cell.remap == RemapKind::Identity) {
                    baselines[data->cell.seed] = data;
                }
            }
            for (const auto remap : kAllRemapKinds) {
                if (remap == RemapKind::Identity) continue;
                std::vector<double> diffs;
                for (const auto* data : selected) {
                    if (data->cell.dataset != dataset || data->cell.remap != remap) continue;
                    const auto base = baselines.find(data->cell.seed);
                    if (base == baselines.end()) continue;
                    diffs.push_back(convergence_diff(
                        base->second->record.valid_loss, base->second->record.valid_acc,
                        data->record.valid_loss, data->record.valid_acc, config.k,
                        config.anchor));
                }
                if (diffs.empty()) continue;
                double mean = 0.0;
                for (double d : diffs) mean += d;
                mean /= static_cast<double>(diffs.size());
                per_approach_means[remap].push_back(mean);
                conv << dataset << "," << approach_label(remap) << ",convergence_diff,"
                     << fmt_double(mean) << ",\n";
            }
        }
        for (const auto& [remap, means] : per_approach_means) {
            if (means.empty()) continue;
            double mean = 0.0;
            for (double m : means) mean += m;
            mean /= static_cast<double>(means.size());
            conv << "average," << approach_label(remap) << ",convergence_diff,"
                 << fmt_double(mean) << ",\n";
        }

        // ---- test accuracy with pooled CIs (Tables 3-4 analog) ----
        std::ofstream acc(csv_path(config, "test_accuracy", method), std::ios::binary);
        acc << "dataset,approach,metric,value,ci_halfwidth\n";
        std::map<RemapKind, std::pair<std::vector<double>, std::vector<double>>> averages;
        for (const auto& dataset : datasets) {
            for (const auto remap : kAllRemapKinds) {
                std::vector<std::uint8_t> pooled;
                for (const auto* data : selected) {
                    if (data->cell.dataset != dataset || data->cell.remap != remap) continue;
                    pooled.insert(pooled.end(), data->record.test_correct.begin(),
                                  data->record.test_correct.end());
                }
                if (pooled.size() < 2) continue;
                const auto [mean, half] = confidence_interval_95(pooled);
                averages[remap].first.push_back(mean);
                averages[remap].second.push_back(half);
                acc << dataset << "," << approach_label(remap) << ",test_accuracy,"
                    << fmt_double(mean) << "," << fmt_double(half) << "\n";
            }
        }
        for (const auto& [remap, pair] : averages) {
            const auto& [means, halves] = pair;
            if (means.empty()) continue;
            double mean = 0.0, half = 0.0;
            for (double m : means) mean += m;
            for (double h : halves) half += h;
            mean /= static_cast<double>(means.size());
            half /= static_cast<double>(halves.size());
            acc << "average," << approach_label(remap) << ",test_accuracy," << fmt_double(mean)
                << "," << fmt_double(half) << "\n";
        }
    }
}

void anova(const RunConfig& config) {
    const auto runs = load_runs(config.resolved_results_dir());

    for (const auto& method : methods_present(runs)) {
        const auto selected = select(runs, method);
        std::set<std::string> datasets;
        std::set<std::uint64_t> seeds;
        for (const auto* data : selected) {
            datasets.insert(data->cell.dataset);
            seeds.insert(data->cell.seed);
        }

        std::ofstream out(csv_path(config, "anova", method), std::ios::binary);
        out << "dataset,f_stat,df_between,df_within,p_value\n";

        // test accuracy by (dataset, approach, seed)
        std::map<std::string, std::map<RemapKind, std::map<std::uint64_t, double>>> acc;
        for (const auto* data : selected) {
            acc[data->cell.dataset][data->cell.remap][data->cell.seed] = data->record.test_acc;
        }

        const auto emit = [&](const std::string& label,
                              const std::vector<std::vector<double>>& groups) {
            if (groups.size() < 2) return;
            for (const auto& g : groups) {
                if (g.size() < 2) return;
            }
            const AnovaResult result = anova_oneway(groups);
            out << label << "," << fmt_double(result.f_stat) << "," << result.df_between << ","
                << result.df_within << "," << fmt_double(result.p_value) << "\n";
        };

        for (const auto& dataset : datasets) {
            std::vector<std::vector<double>> groups;
            for (const auto remap : kAllRemapKinds) {
                const auto it = acc[dataset].find(remap);
                if (it == acc[dataset].end()) continue;
                std::vector<double> g;
                for (const auto& [seed, value] : it->second) g.push_back(value);
                if (!g.empty()) groups.push_back(std::move(g));
            }
            emit(dataset, groups);
        }

        // Across-dataset average: per approach, one observation per seed,
        // averaged over the datasets that have that (approach, seed) run.
        std::vector<std::vector<double>> groups;
        for (const auto remap : kAllRemapKinds) {
            std::vector<double> g;
            for (const auto seed : seeds) {
                double sum = 0.0;
                int count = 0;
                for (const auto& dataset : datasets) {
                    const auto approach_it = acc[dataset].find(remap);
                    if (approach_it == acc[dataset].end()) continue;
                    const auto seed_it = approach_it->second.find(seed);
                    if (seed_it == approach_it->second.end()) continue;
                    sum += seed_it->second;
                    ++count;
                }
                if (count > 0) g.push_back(sum / count);
            }
            if (!g.empty()) groups.push_back(std::move(g));
        }
        emit("average", groups);
    }
}

void plot(const RunConfig& config) {
    const auto runs = load_runs(config.resolved_results_dir());
    const fs::path out_dir = fs::path(config.resolved_results_dir()) / "plots";
    fs::create_directories(out_dir);

    static const char* kColors[7] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                     "#9467bd", "#8c564b", "#e377c2"};

    for (const auto& method : methods_present(runs)) {
        const auto selected = select(runs, method);
        std::set<std::string> datasets;
        for (const auto* data : selected) datasets.insert(data->cell.dataset);

        for (const auto& dataset : datasets) {
            std::vector<CurveSeries> series;
            int color_index = 0;
            for (const auto remap : kAllRemapKinds) {
                std::vector<const RunData*> members;
                for (const auto* data : selected) {
                    if (data->cell.dataset == dataset && data->cell.remap == remap) {
                        members.push_back(data);
                    }
                }
                const char* color = kColors[color_index++ % 7];
                if (members.empty()) continue;
                std::size_t epochs = members.front()->record.valid_acc.size();
                for (const auto* m : members) {
                    epochs = std::min(epochs, m->record.valid_acc.size());
                }

                const auto mean_std = [&](auto accessor) {
                    std::pair<std::vector<double>, std::vector<double>> out;
                    out.first.assign(epochs, 0.0);
                    out.second.assign(epochs, 0.0);
                    for (const auto* m : members) {
                        const auto& curve = accessor(m->record);
                        for (std::size_t e = 0; e < epochs && e < curve.size(); ++e) {
                            out.first[e] += curve[e];
                        }
                    }
                    for (double& v : out.first) v /= static_cast<double>(members.size());
                    if (members.size() > 1) {
                        for (const auto* m : members) {
                            const auto& curve = accessor(m->record);
                            for (std::size_t e = 0; e < epochs && e < curve.size(); ++e) {
                                const double d = curve[e] - out.first[e];
                                out.second[e] += d * d;
                            }
                        }
                        for (double& v : out.second) {
                            v = std::sqrt(v / static_cast<double>(members.size()));
                        }
                    } else {
                        out.second.clear(); // single run: no std band
                    }
                    return out;
                };

                auto [valid_mean, valid_std] =
                    mean_std([](const TrainRecord& r) -> const std::vector<double>& {
                        return r.valid_acc;
                    });
                auto [train_mean, train_std] =
                    mean_std([](const TrainRecord& r) -> const std::vector<double>& {
                        return r.train_acc;
                    });

                series.push_back({approach_label(remap) + " (valid)", color, false,
                                  std::move(valid_mean), std::move(valid_std)});
                series.push_back({approach_label(remap) + " (train)", color, true,
                                  std::move(train_mean), {}});
            }
            if (series.empty()) continue;
            const std::string title = dataset + " (" +
                                      std::string(embedding_name(method.kind)) + " embedding" +
                                      (method.reupload ? ", re-uploading" : "") + ")";
            const std::string svg = learning_curve_svg(title, "accuracy", series);
            const fs::path path = out_dir / ("curves_" + dataset + "_" + method.suffix() +
                                             ".svg");
            std::ofstream out(path, std::ios::binary);
            if (!out) throw Error(ErrorCode::Io, "cli-runner", "cannot write " + path.string());
            out << svg;
        }
    }
}

} // namespace vqremap
