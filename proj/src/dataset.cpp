#include "dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "error.hpp"
#include "textio.hpp"

namespace vqremap {

namespace detail {
extern const double kIrisFeatures[150][4];
extern const int kIrisLabels[150];
} // namespace detail

namespace {

[[noreturn]] void ingest_error(const std::string& message) {
    throw Error(ErrorCode::Ingest, "data", message);
}

std::vector<DatasetSchema> build_schemas() {
    std::vector<DatasetSchema> schemas;
    DatasetSchema abalone;
    abalone.name = "abalone";
    abalone.default_filename = "abalone.data";
    abalone.n_features = 8;
    abalone.n_classes = 3;
    abalone.label_column = 0;
    abalone.expected_rows = 4177;
    abalone.label_tokens = {{"M", 0}, {"F", 1}, {"I", 2}};
    schemas.push_back(abalone);

    DatasetSchema banknote;
    banknote.name = "banknote";
    banknote.default_filename = "data_banknote_authentication.txt";
    banknote.n_features = 4;
    banknote.n_classes = 2;
    banknote.label_column = 4;
    banknote.expected_rows = 1372;
    schemas.push_back(banknote);

    DatasetSchema glass;
    glass.name = "glass";
    glass.default_filename = "glass.data";
    glass.n_features = 9;
    glass.n_classes = 7;
    glass.label_column = 10;
    glass.expected_rows = 214;
    glass.ignored_columns = {0}; // row id
    glass.label_offset = 1;
    schemas.push_back(glass);

    DatasetSchema heart;
    heart.name = "heart";
    heart.default_filename = "heart.csv";
    heart.n_features = 13;
    heart.n_classes = 2;
    heart.label_column = 13;
    heart.expected_rows = 303;
    heart.label_binarize = true;
    schemas.push_back(heart);

    DatasetSchema diabetes;
    diabetes.name = "diabetes";
    diabetes.default_filename = "pima-indians-diabetes.csv";
    diabetes.n_features = 8;
    diabetes.n_classes = 2;
    diabetes.label_column = 8;
    diabetes.expected_rows = 768;
    schemas.push_back(diabetes);

    DatasetSchema iris;
    iris.name = "iris";
    iris.default_filename = "iris.data";
    iris.n_features = 4;
    iris.n_classes = 3;
    iris.label_column = 4;
    iris.expected_rows = 150;
    iris.label_tokens = {{"Iris-setosa", 0}, {"Iris-versicolor", 1}, {"Iris-virginica", 2}};
    schemas.push_back(iris);

    DatasetSchema iris2;
    iris2.name = "iris-2class";
    iris2.default_filename = ""; // embedded fixture only
    iris2.n_features = 4;
    iris2.n_classes = 2;
    iris2.label_column = 4;
    iris2.expected_rows = 100;
    schemas.push_back(iris2);

    DatasetSchema seeds;
    seeds.name = "seeds";
    seeds.default_filename = "seeds_dataset.txt";
    seeds.n_features = 7;
    seeds.n_classes = 3;
    seeds.label_column = 7;
    seeds.expected_rows = 210;
    seeds.whitespace_delimited = true;
    seeds.label_offset = 1;
    schemas.push_back(seeds);

    DatasetSchema wine;
    wine.name = "wine";
    wine.default_filename = "wine.data";
    wine.n_features = 13;
    wine.n_classes = 3;
    wine.label_column = 0;
    wine.expected_rows = 178;
    wine.label_offset = 1;
    schemas.push_back(wine);
    return schemas;
}

std::vector<std::string> tokenize(const std::string& line, bool whitespace) {
    std::vector<std::string> cells;
    if (whitespace) {
        std::istringstream ss(line);
        std::string token;
        while (ss >> token) cells.push_back(token);
        return cells;
    }
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = line.find(',', pos);
        if (next == std::string::npos) {
            cells.push_back(line.substr(pos));
            break;
        }
        cells.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return cells;
}

bool parses_as_double(const std::string& cell) {
    double v;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    return ec == std::errc{} && ptr == cell.data() + cell.size();
}

int map_label(const std::string& cell, const DatasetSchema& schema, std::size_t row) {
    if (!schema.label_tokens.empty()) {
        for (const auto& [token, index] : schema.label_tokens) {
            if (token == cell) return index;
        }
        ingest_error(schema.name + ": unknown class label '" + cell + "' at row " +
                     std::to_string(row + 1));
    }
    const double v = parse_double(cell, schema.name + " row " + std::to_string(row + 1));
    const int raw = static_cast<int>(std::lround(v));
    const int index = schema.label_binarize ? (raw >= 1 ? 1 : 0) : raw - schema.label_offset;
    if (index < 0 || index >= schema.n_classes) {
        ingest_error(schema.name + ": class label " + cell + " out of range at row " +
                     std::to_string(row + 1));
    }
    return index;
}

} // namespace

const std::vector<DatasetSchema>& all_schemas() {
    static const std::vector<DatasetSchema> schemas = build_schemas();
    return schemas;
}

const DatasetSchema& schema_for(std::string_view name) {
    for (const auto& schema : all_schemas()) {
        if (schema.name == name) return schema;
    }
    throw Error(ErrorCode::Usage, "data", "unknown dataset '" + std::string(name) + "'");
}

RawTable load_csv(const std::string& path, const DatasetSchema& schema) {
    std::ifstream in(path);
    if (!in) ingest_error("cannot open " + path);

    RawTable table;
    table.n_features = schema.n_features;
    table.n_classes = schema.n_classes;

    // first-seen token -> code, per categorical column
    std::map<int, std::map<std::string, int>> categorical_codes;
    for (int c : schema.categorical_columns) categorical_codes[c];

    std::string line;
    std::size_t data_rows = 0;
    bool first_line = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto cells = tokenize(line, schema.whitespace_delimited);

        // A leading header line is tolerated: detected when a feature cell of
        // the very first line is not numeric (and not a categorical column).
        if (first_line) {
            first_line = false;
            bool header = false;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                const int col = static_cast<int>(c);
                if (col == schema.label_column) continue;
                if (std::count(schema.ignored_columns.begin(), schema.ignored_columns.end(),
                               col))
                    continue;
                if (categorical_codes.count(col)) continue;
                if (!parses_as_double(cells[c]) && cells[c] != "?") header = true;
                break;
            }
            if (header) continue;
        }

        ++data_rows;
        const std::size_t row = data_rows - 1;

        const std::size_t expected_cells = static_cast<std::size_t>(schema.n_features) +
                                           schema.ignored_columns.size() + 1;
        if (cells.size() != expected_cells) {
            ingest_error(schema.name + ": row " + std::to_string(row + 1) + " has " +
                         std::to_string(cells.size()) + " columns, expected " +
                         std::to_string(expected_cells));
        }

        if (std::any_of(cells.begin(), cells.end(),
                        [](const std::string& c) { return c == "?"; })) {
            ++table.dropped_rows;
            continue;
        }

        int label = -1;
        std::vector<double> features;
        features.reserve(schema.n_features);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const int col = static_cast<int>(c);
            if (std::count(schema.ignored_columns.begin(), schema.ignored_columns.end(), col))
                continue;
            if (col == schema.label_column) {
                label = map_label(cells[c], schema, row);
                continue;
            }
            auto cat = categorical_codes.find(col);
            if (cat != categorical_codes.end() && !parses_as_double(cells[c])) {
                auto [it, inserted] =
                    cat->second.emplace(cells[c], static_cast<int>(cat->second.size()));
                features.push_back(static_cast<double>(it->second));
                continue;
            }
            if (!parses_as_double(cells[c])) {
                ingest_error(schema.name + ": unparseable cell '" + cells[c] + "' at row " +
                             std::to_string(row + 1) + " column " + std::to_string(col + 1));
            }
            features.push_back(parse_double(cells[c], schema.name));
        }
        table.labels.push_back(label);
        table.features.insert(table.features.end(), features.begin(), features.end());
    }

    if (data_rows != static_cast<std::size_t>(schema.expected_rows)) {
        ingest_error(schema.name + ": expected " + std::to_string(schema.expected_rows) +
                     " rows in " + path + ", found " + std::to_string(data_rows));
    }
    if (table.dropped_rows > 0) {
        std::cerr << "[data] " << schema.name << ": dropped " << table.dropped_rows
                  << " rows with missing values\n";
    }
    return table;
}

RawTable iris_table() {
    RawTable table;
    table.n_features = 4;
    table.n_classes = 3;
    table.features.reserve(150 * 4);
    table.labels.reserve(150);
    for (int i = 0; i < 150; ++i) {
        for (int j = 0; j < 4; ++j) table.features.push_back(detail::kIrisFeatures[i][j]);
        table.labels.push_back(detail::kIrisLabels[i]);
    }
    return table;
}

RawTable iris_two_class_table() {
    const RawTable full = iris_table();
    RawTable table;
    table.n_features = 4;
    table.n_classes = 2;
    for (std::size_t i = 0; i < full.n_rows(); ++i) {
        if (full.labels[i] > 1) continue;
        const auto row = full.row(i);
        table.features.insert(table.features.end(), row.begin(), row.end());
        table.labels.push_back(full.labels[i]);
    }
    return table;
}

RawTable load_dataset(std::string_view name, const std::string& data_dir) {
    const DatasetSchema& schema = schema_for(name);
    if (schema.name == "iris") return iris_table();
    if (schema.name == "iris-2class") return iris_two_class_table();
    const auto path = std::filesystem::path(data_dir) / schema.default_filename;
    if (!std::filesystem::exists(path)) {
        ingest_error("dataset file not found: " + path.string() + " (UCI file for '" +
                     schema.name + "')");
    }
    return load_csv(path.string(), schema);
}

SplitIndices stratified_split(std::span<const int> labels, int n_classes, std::uint64_t seed) {
    if (labels.empty()) throw Error(ErrorCode::Config, "data", "cannot split an empty dataset");
    // Distinct stream from the weight-initialization RNG of the same seed.
    Rng rng(seed ^ 0xD1B54A32D192ED03ULL);

    std::vector<std::vector<std::size_t>> by_class(n_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
    for (auto& members : by_class) shuffle(members, rng);

    // Per-class floor of the ideal share, with the global remainder handed to
    // the largest fractional parts; keeps each split within one sample of the
    // stratified ideal.
    const auto apportion = [](const std::vector<double>& ideal, const std::vector<std::size_t>& cap,
                              std::size_t total) {
        std::vector<std::size_t> counts(ideal.size());
        std::vector<std::pair<double, std::size_t>> remainders;
        std::size_t assigned = 0;
        for (std::size_t c = 0; c < ideal.size(); ++c) {
            counts[c] = std::min(static_cast<std::size_t>(ideal[c]), cap[c]);
            assigned += counts[c];
            remainders.push_back({ideal[c] - std::floor(ideal[c]), c});
        }
        std::stable_sort(remainders.begin(), remainders.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (const auto& [frac, c] : remainders) {
            if (assigned >= total) break;
            if (counts[c] < cap[c]) {
                ++counts[c];
                ++assigned;
            }
        }
        return counts;
    };

    SplitIndices out;
    std::vector<std::size_t> eligible;
    std::size_t eligible_total = 0;
    for (int c = 0; c < n_classes; ++c) {
        if (by_class[c].empty()) continue;
        if (by_class[c].size() < 3) {
            std::cerr << "[data] class " << c << " has " << by_class[c].size()
                      << " samples; all assigned to train\n";
            out.train.insert(out.train.end(), by_class[c].begin(), by_class[c].end());
            continue;
        }
        eligible.push_back(static_cast<std::size_t>(c));
        eligible_total += by_class[c].size();
    }

    std::vector<double> ideal_train, ideal_valid;
    std::vector<std::size_t> cap_train, cap_valid;
    for (std::size_t c : eligible) {
        ideal_train.push_back(0.75 * static_cast<double>(by_class[c].size()));
        cap_train.push_back(by_class[c].size());
    }
    const auto train_counts = apportion(
        ideal_train, cap_train, static_cast<std::size_t>(0.75 * static_cast<double>(eligible_total)));

    for (std::size_t k = 0; k < eligible.size(); ++k) {
        const std::size_t c = eligible[k];
        ideal_valid.push_back(0.125 * static_cast<double>(by_class[c].size()));
        cap_valid.push_back(by_class[c].size() - train_counts[k]);
    }
    const auto valid_counts =
        apportion(ideal_valid, cap_valid,
                  static_cast<std::size_t>(0.125 * static_cast<double>(eligible_total)));

    for (std::size_t k = 0; k < eligible.size(); ++k) {
        const auto& members = by_class[eligible[k]];
        const std::size_t t = train_counts[k];
        const std::size_t v = valid_counts[k];
        out.train.insert(out.train.end(), members.begin(), members.begin() + t);
        out.valid.insert(out.valid.end(), members.begin() + t, members.begin() + t + v);
        out.test.insert(out.test.end(), members.begin() + t + v, members.end());
    }
    return out;
}

Preprocessor Preprocessor::fit(const RawTable& table, std::span<const std::size_t> rows,
                               EmbeddingKind kind) {
    if (rows.empty()) throw Error(ErrorCode::Config, "data", "cannot fit scaler on empty split");
    Preprocessor prep;
    prep.scale_to = kind == EmbeddingKind::Angle ? kPi : 1.0;
    prep.col_min.assign(table.n_features, std::numeric_limits<double>::infinity());
    prep.col_max.assign(table.n_features, -std::numeric_limits<double>::infinity());
    for (std::size_t r : rows) {
        const auto row = table.row(r);
        for (int c = 0; c < table.n_features; ++c) {
            prep.col_min[c] = std::min(prep.col_min[c], row[c]);
            prep.col_max[c] = std::max(prep.col_max[c], row[c]);
        }
    }
    for (int c = 0; c < table.n_features; ++c) {
        if (prep.col_min[c] == prep.col_max[c]) prep.constant_columns.push_back(c);
    }
    if (!prep.constant_columns.empty()) {
        std::cerr << "[data] " << prep.constant_columns.size()
                  << " constant feature column(s) scaled to the midpoint\n";
    }
    return prep;
}

void Preprocessor::transform(std::span<const double> row, std::span<double> out) const {
    for (std::size_t c = 0; c < row.size(); ++c) {
        if (col_min[c] == col_max[c]) {
            out[c] = 0.5 * scale_to;
            continue;
        }
        const double clipped = std::clamp(row[c], col_min[c], col_max[c]);
        out[c] = (clipped - col_min[c]) / (col_max[c] - col_min[c]) * scale_to;
    }
}

SplitData make_splits(const RawTable& table, EmbeddingKind kind, std::uint64_t seed) {
    const SplitIndices indices = stratified_split(table.labels, table.n_classes, seed);
    const Preprocessor prep = Preprocessor::fit(table, indices.train, kind);

    SplitData splits;
    splits.n_features = table.n_features;
    splits.n_classes = table.n_classes;

    const auto emit = [&](const std::vector<std::size_t>& rows, std::vector<double>& x,
                          std::vector<int>& y) {
        x.resize(rows.size() * table.n_features);
        y.resize(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            prep.transform(table.row(rows[i]),
                           {x.data() + i * table.n_features,
                            static_cast<std::size_t>(table.n_features)});
            y[i] = table.labels[rows[i]];
        }
    };
    emit(indices.train, splits.train_x, splits.train_y);
    emit(indices.valid, splits.valid_x, splits.valid_y);
    emit(indices.test, splits.test_x, splits.test_y);
    if (splits.train_y.empty()) {
        throw Error(ErrorCode::Config, "data", "training split is empty");
    }
    return splits;
}

} // namespace vqremap
