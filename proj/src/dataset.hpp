#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "embedding.hpp"
#include "rng.hpp"

namespace vqremap {

struct DatasetSchema {
    std::string name;
    std::string default_filename;
    int n_features = 0;
    int n_classes = 0;
    int label_column = 0;   // original column index
    int expected_rows = 0;  // validated against the file's data lines
    std::vector<int> ignored_columns;     // e.g. glass row id
    std::vector<int> categorical_columns; // feature columns mapped to integer codes
    bool whitespace_delimited = false;    // seeds is tab separated
    std::vector<std::pair<std::string, int>> label_tokens; // string class labels
    int label_offset = 0;      // numeric class labels: index = value - offset
    bool label_binarize = false; // heart: any positive degree -> class 1
};

const std::vector<DatasetSchema>& all_schemas();
const DatasetSchema& schema_for(std::string_view name);

struct RawTable {
    int n_features = 0;
    int n_classes = 0;
    std::vector<double> features; // row-major
    std::vector<int> labels;
    int dropped_rows = 0; // rows removed for the "?" missing-value token

    std::size_t n_rows() const { return labels.size(); }
    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * n_features, static_cast<std::size_t>(n_features)};
    }
};

RawTable load_csv(const std::string& path, const DatasetSchema& schema);

// The full Iris table ships embedded; no data directory needed.
RawTable iris_table();
RawTable iris_two_class_table(); // Setosa/Versicolour rows only

RawTable load_dataset(std::string_view name, const std::string& data_dir);

struct SplitIndices {
    std::vector<std::size_t> train, valid, test;
};

// Stratified 75/12.5/12.5. Classes with fewer than 3 samples contribute all
// of them to train, with a warning.
SplitIndices stratified_split(std::span<const int> labels, int n_classes, std::uint64_t seed);

// Per-feature min-max scaling fitted on the training split only. Angle maps
// to [0, pi], amplitude to [0, 1]; values outside the fitted range clip.
struct Preprocessor {
    std::vector<double> col_min, col_max;
    double scale_to = 1.0;
    std::vector<int> constant_columns; // scaled to the midpoint

    static Preprocessor fit(const RawTable& table, std::span<const std::size_t> rows,
                            EmbeddingKind kind);
    void transform(std::span<const double> row, std::span<double> out) const;
};

struct SplitData {
    int n_features = 0;
    int n_classes = 0;
    std::vector<double> train_x, valid_x, test_x;
    std::vector<int> train_y, valid_y, test_y;

    std::span<const double> train_row(std::size_t i) const {
        return {train_x.data() + i * n_features, static_cast<std::size_t>(n_features)};
    }
    std::span<const double> valid_row(std::size_t i) const {
        return {valid_x.data() + i * n_features, static_cast<std::size_t>(n_features)};
    }
    std::span<const double> test_row(std::size_t i) const {
        return {test_x.data() + i * n_features, static_cast<std::size_t>(n_features)};
    }
};

SplitData make_splits(const RawTable& table, EmbeddingKind kind, std::uint64_t seed);

} // namespace vqremap
