#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nystrompca/kernels.hpp"

namespace nystrompca {

enum class ColumnType { Numeric, Ordinal, Categorical, Datetime };

struct Column {
    std::string name;
    ColumnType type = ColumnType::Numeric;
    std::vector<std::string> cells;   // raw text (categorical / datetime / ordinal)
    std::vector<double> values;       // parsed (numeric)
};

struct Dataset {
    std::vector<Column> columns;
    std::optional<std::string> target_column;
    int row_count = 0;

    const Column& column(const std::string& name) const;
    Vector target_values() const;     // numeric target column as a vector
};

struct PreprocessOptions {
    // Ordered category lists per ordinal column; columns not listed here are
    // treated as categorical (one-hot).
    std::map<std::string, std::vector<std::string>> ordinal_maps;
};

struct PreprocessReport {
    std::vector<std::string> dropped_columns;  // datetime or train-constant
    std::map<std::string, std::vector<std::string>> onehot_expansions;
    std::vector<std::string> feature_names;    // retained, in matrix order
    std::vector<double> train_means;
    std::vector<double> train_stds;
};

// CSV reader with RFC-4180 quoting. A column is numeric iff every cell parses
// as a real number; cells matching common date/time layouts make a column
// Datetime; anything else is Categorical. Empty cells and ragged rows are
// errors (the message names the offending line).
Dataset load_csv(const std::string& path, bool has_header,
                 const std::optional<std::string>& target = std::nullopt);

// Row subset in the given order (indices into 0..row_count-1).
Dataset take_rows(const Dataset& dataset, std::span<const int> rows);

// Encode ordinals (sidecar order), one-hot categoricals (category set and
// column order from train; unseen categories in apply_to encode to all
// zeros), drop datetime and train-constant columns, then standardize both
// outputs with the train means and standard deviations. The target column is
// excluded from the feature matrix.
std::tuple<Matrix, Matrix, PreprocessReport>
preprocess(const Dataset& train, const Dataset& apply_to,
           const PreprocessOptions& options = {});

// Load the sidecar JSON {"column": ["low", "mid", "high"], ...}.
PreprocessOptions load_ordinal_sidecar(const std::string& path);

// Deterministic split; test receives ceil(n * test_fraction) rows. Both index
// lists are sorted ascending.
std::pair<std::vector<int>, std::vector<int>>
train_test_split(int n, double test_fraction, std::uint64_t seed);

// Permutation of 0..n-1 whose first m entries are a uniform sample without
// replacement; the remainder keeps the original relative order.
std::vector<int> sample_subset(int n, int m, std::uint64_t seed);

} // namespace nystrompca
