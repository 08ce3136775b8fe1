#include "nystrompca/data_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nystrompca/errors.hpp"
#include "nystrompca/rng.hpp"

namespace nystrompca {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

bool parse_real(const std::string& cell, double& out) {
    const std::string trimmed = trim(cell);
    if (trimmed.empty()) return false;
    char* end = nullptr;
    const double value = std::strtod(trimmed.c_str(), &end);
    if (end != trimmed.c_str() + trimmed.size()) return false;
    if (!std::isfinite(value)) return false;
    out = value;
    return true;
}

bool looks_like_datetime(const std::string& cell) {
    static const std::regex iso(R"(^\d{4}-\d{2}-\d{2}([ T]\d{2}:\d{2}(:\d{2})?)?$)");
    static const std::regex slashed(R"(^\d{1,2}[/.]\d{1,2}[/.]\d{2,4}$)");
    static const std::regex clock(R"(^\d{1,2}:\d{2}(:\d{2})?$)");
    const std::string trimmed = trim(cell);
    return std::regex_match(trimmed, iso) || std::regex_match(trimmed, slashed) ||
           std::regex_match(trimmed, clock);
}

struct RawRow {
    std::vector<std::string> fields;
    int line = 0; // 1-based line where the row starts
};

// RFC-4180 tokenizer: quoted fields may contain commas, doubled quotes and
// line breaks.
std::vector<RawRow> tokenize_csv(const std::string& text) {
    std::vector<RawRow> rows;
    RawRow current;
    current.line = 1;
    std::string field;
    bool in_quotes = false;
    bool row_has_content = false;
    int line = 1;

    auto end_field = [&] {
        current.fields.push_back(field);
        field.clear();
    };
    auto end_row = [&] {
        if (row_has_content || !current.fields.empty() || !field.empty()) {
            end_field();
            rows.push_back(std::move(current));
        }
        current = RawRow{};
        current.line = line;
        row_has_content = false;
    };

    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c == '\n') ++line;
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field.push_back('"');
                    ++pos;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            row_has_content = true;
            break;
        case ',':
            end_field();
            row_has_content = true;
            break;
        case '\r':
            break;
        case '\n':
            end_row();
            current.line = line;
            break;
        default:
            field.push_back(c);
            row_has_content = true;
        }
    }
    if (in_quotes) throw ConfigError("CSV parse error: unterminated quoted field");
    end_row();
    return rows;
}

} // namespace

const Column& Dataset::column(const std::string& name) const {
    for (const auto& col : columns) {
        if (col.name == name) return col;
    }
    throw ConfigError("no column named '" + name + "'");
}

Vector Dataset::target_values() const {
    if (!target_column) throw ConfigError("dataset has no target column");
    const Column& col = column(*target_column);
    if (col.type != ColumnType::Numeric) {
        throw ConfigError("target column '" + *target_column + "' is not numeric");
    }
    Vector y(row_count);
    for (int i = 0; i < row_count; ++i) y(i) = col.values[static_cast<std::size_t>(i)];
    return y;
}

Dataset load_csv(const std::string& path, bool has_header,
                 const std::optional<std::string>& target) {
    std::ifstream input(path, std::ios::binary);
    if (!input) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << input.rdbuf();
    const std::vector<RawRow> rows = tokenize_csv(buffer.str());
    if (rows.empty()) throw ConfigError("'" + path + "' is empty");

    const std::size_t width = rows.front().fields.size();
    for (const RawRow& row : rows) {
        if (row.fields.size() != width) {
            throw ConfigError("ragged CSV row at line " + std::to_string(row.line) + " in '" +
                              path + "': " + std::to_string(row.fields.size()) + " fields, expected " +
                              std::to_string(width));
        }
    }

    Dataset data;
    std::size_t first_data_row = 0;
    data.columns.resize(width);
    if (has_header) {
        for (std::size_t j = 0; j < width; ++j) data.columns[j].name = trim(rows[0].fields[j]);
        first_data_row = 1;
    } else {
        for (std::size_t j = 0; j < width; ++j) data.columns[j].name = "col" + std::to_string(j);
    }
    {
        std::set<std::string> seen;
        for (const auto& col : data.columns) {
            if (!seen.insert(col.name).second) {
                throw ConfigError("duplicate column name '" + col.name + "'");
            }
        }
    }

    data.row_count = static_cast<int>(rows.size() - first_data_row);
    if (data.row_count == 0) throw ConfigError("'" + path + "' has no data rows");

    for (std::size_t j = 0; j < width; ++j) {
        Column& col = data.columns[j];
        col.cells.reserve(static_cast<std::size_t>(data.row_count));
        bool numeric = true;
        bool datetime = true;
        for (std::size_t r = first_data_row; r < rows.size(); ++r) {
            const std::string cell = trim(rows[r].fields[j]);
            if (cell.empty()) {
                throw ConfigError("empty cell in column '" + col.name + "' at line " +
                                  std::to_string(rows[r].line));
            }
            double value = 0.0;
            if (!parse_real(cell, value)) numeric = false;
            if (!looks_like_datetime(cell)) datetime = false;
            col.cells.push_back(cell);
        }
        if (numeric) {
            col.type = ColumnType::Numeric;
            col.values.reserve(col.cells.size());
            for (const std::string& cell : col.cells) {
                double value = 0.0;
                parse_real(cell, value);
                col.values.push_back(value);
            }
        } else if (datetime) {
            col.type = ColumnType::Datetime;
        } else {
            col.type = ColumnType::Categorical;
        }
    }

    if (target) {
        data.column(*target); // throws when missing
        data.target_column = target;
    }
    return data;
}

Dataset take_rows(const Dataset& dataset, std::span<const int> rows) {
    Dataset out;
    out.target_column = dataset.target_column;
    out.row_count = static_cast<int>(rows.size());
    out.columns.reserve(dataset.columns.size());
    for (const Column& col : dataset.columns) {
        Column copy;
        copy.name = col.name;
        copy.type = col.type;
        for (int r : rows) {
            if (r < 0 || r >= dataset.row_count) throw ConfigError("take_rows: index out of range");
            if (!col.cells.empty()) copy.cells.push_back(col.cells[static_cast<std::size_t>(r)]);
            if (!col.values.empty()) copy.values.push_back(col.values[static_cast<std::size_t>(r)]);
        }
        out.columns.push_back(std::move(copy));
    }
    return out;
}

std::tuple<Matrix, Matrix, PreprocessReport>
preprocess(const Dataset& train, const Dataset& apply_to, const PreprocessOptions& options) {
    if (train.columns.size() != apply_to.columns.size()) {
        throw ConfigError("preprocess: schemas differ in column count");
    }
    for (std::size_t j = 0; j < train.columns.size(); ++j) {
        if (train.columns[j].name != apply_to.columns[j].name ||
            train.columns[j].type != apply_to.columns[j].type) {
            throw ConfigError("preprocess: schema mismatch at column '" +
                              train.columns[j].name + "'");
        }
    }
    if (train.row_count < 1 || apply_to.row_count < 1) {
        throw ConfigError("preprocess: empty dataset");
    }

    PreprocessReport report;
    std::vector<Vector> train_cols;
    std::vector<Vector> apply_cols;
    std::vector<std::string> names;

    auto encode_ordinal = [&](const Column& col, const std::vector<std::string>& order) {
        Vector encoded(static_cast<int>(col.cells.size()));
        for (std::size_t i = 0; i < col.cells.size(); ++i) {
            const auto it = std::find(order.begin(), order.end(), col.cells[i]);
            if (it == order.end()) {
                throw ConfigError("ordinal column '" + col.name + "': value '" + col.cells[i] +
                                  "' missing from the sidecar ordering");
            }
            encoded(static_cast<int>(i)) = static_cast<double>(it - order.begin());
        }
        return encoded;
    };

    for (std::size_t j = 0; j < train.columns.size(); ++j) {
        const Column& tcol = train.columns[j];
        const Column& acol = apply_to.columns[j];
        if (train.target_column && tcol.name == *train.target_column) continue;

        if (tcol.type == ColumnType::Datetime) {
            report.dropped_columns.push_back(tcol.name);
            continue;
        }
        if (tcol.type == ColumnType::Numeric) {
            train_cols.emplace_back(Eigen::Map<const Vector>(tcol.values.data(),
                                                             static_cast<int>(tcol.values.size())));
            apply_cols.emplace_back(Eigen::Map<const Vector>(acol.values.data(),
                                                             static_cast<int>(acol.values.size())));
            names.push_back(tcol.name);
            continue;
        }
        const auto ordinal = options.ordinal_maps.find(tcol.name);
        if (ordinal != options.ordinal_maps.end()) {
            train_cols.push_back(encode_ordinal(tcol, ordinal->second));
            apply_cols.push_back(encode_ordinal(acol, ordinal->second));
            names.push_back(tcol.name);
            continue;
        }
        // One-hot with the category set and order taken from train; an unseen
        // category in apply_to encodes to all zeros.
        std::set<std::string> categories(tcol.cells.begin(), tcol.cells.end());
        std::vector<std::string> expanded;
        for (const std::string& category : categories) {
            Vector t(train.row_count);
            Vector a(apply_to.row_count);
            for (int i = 0; i < train.row_count; ++i) {
                t(i) = tcol.cells[static_cast<std::size_t>(i)] == category ? 1.0 : 0.0;
            }
            for (int i = 0; i < apply_to.row_count; ++i) {
                a(i) = acol.cells[static_cast<std::size_t>(i)] == category ? 1.0 : 0.0;
            }
            train_cols.push_back(std::move(t));
            apply_cols.push_back(std::move(a));
            names.push_back(tcol.name + "=" + category);
            expanded.push_back(names.back());
        }
        report.onehot_expansions[tcol.name] = std::move(expanded);
    }

    // Standardize with the train statistics only; zero-variance columns drop.
    std::vector<int> kept;
    for (std::size_t j = 0; j < train_cols.size(); ++j) {
        const double mean = train_cols[j].mean();
        const double var = (train_cols[j].array() - mean).square().mean();
        const double std_dev = std::sqrt(var);
        if (std_dev == 0.0) {
            report.dropped_columns.push_back(names[j]);
            continue;
        }
        kept.push_back(static_cast<int>(j));
        report.feature_names.push_back(names[j]);
        report.train_means.push_back(mean);
        report.train_stds.push_back(std_dev);
    }
    if (kept.empty()) throw ConfigError("preprocess: all columns dropped");

    Matrix train_out(train.row_count, static_cast<int>(kept.size()));
    Matrix apply_out(apply_to.row_count, static_cast<int>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c) {
        const auto j = static_cast<std::size_t>(kept[c]);
        train_out.col(static_cast<int>(c)) =
            (train_cols[j].array() - report.train_means[c]) / report.train_stds[c];
        apply_out.col(static_cast<int>(c)) =
            (apply_cols[j].array() - report.train_means[c]) / report.train_stds[c];
    }
    return {std::move(train_out), std::move(apply_out), std::move(report)};
}

PreprocessOptions load_ordinal_sidecar(const std::string& path) {
    std::ifstream input(path);
    if (!input) throw ConfigError("cannot open ordinal sidecar '" + path + "'");
    nlohmann::json parsed;
    try {
        input >> parsed;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("ordinal sidecar '" + path + "': " + e.what());
    }
    if (!parsed.is_object()) throw ConfigError("ordinal sidecar must be a JSON object");
    PreprocessOptions options;
    for (const auto& [column, order] : parsed.items()) {
        if (!order.is_array()) throw ConfigError("ordinal sidecar: '" + column + "' is not an array");
        std::vector<std::string> values;
        for (const auto& v : order) values.push_back(v.get<std::string>());
        options.ordinal_maps[column] = std::move(values);
    }
    return options;
}

std::pair<std::vector<int>, std::vector<int>>
train_test_split(int n, double test_fraction, std::uint64_t seed) {
    if (n < 2) throw ConfigError("train_test_split: need at least two rows");
    if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
        throw ConfigError("train_test_split: fraction must lie strictly between 0 and 1");
    }
    const int n_train = static_cast<int>(std::floor(n * (1.0 - test_fraction)));
    const int n_test = n - n_train; // fractional rows go to the test side
    if (n_train == 0 || n_test == 0) throw ConfigError("train_test_split: degenerate split");

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    SplitMix64 rng(seed);
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    std::vector<int> test(order.begin(), order.begin() + n_test);
    std::vector<int> train(order.begin() + n_test, order.end());
    std::sort(test.begin(), test.end());
    std::sort(train.begin(), train.end());
    return {std::move(train), std::move(test)};
}

std::vector<int> sample_subset(int n, int m, std::uint64_t seed) {
    if (m < 1 || m > n) throw ConfigError("sample_subset: need 1 <= m <= n");
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    SplitMix64 rng(seed);
    for (int i = 0; i < m; ++i) {
        const int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    std::vector<int> order(pool.begin(), pool.begin() + m);
    std::vector<char> chosen(static_cast<std::size_t>(n), 0);
    for (int idx : order) chosen[static_cast<std::size_t>(idx)] = 1;
    for (int i = 0; i < n; ++i) {
        if (!chosen[static_cast<std::size_t>(i)]) order.push_back(i);
    }
    return order;
}

} // namespace nystrompca
