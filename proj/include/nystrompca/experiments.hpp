#pragma once

#include "nystrompca/data_pipeline.hpp"
#include "nystrompca/eigen_utils.hpp"
#include "nystrompca/nystrom_kpca.hpp"

namespace nystrompca {

// Shared configuration for the three experiment commands. Unused fields are
// ignored by commands that do not consume them.
struct ExperimentConfig {
    enum class Command { Methods, Bound, Regression };
    Command command = Command::Methods;

    std::string data_path;
    std::string dataset_name;            // defaults to the file stem
    std::optional<std::string> target;   // regression target column (default: last)
    std::string ordinal_sidecar;         // optional JSON with ordinal orderings

    KernelSpec kernel;
    bool median_sigma = false;           // bandwidth from the subset rows

    int m = 100;
    int max_d = 10;                      // methods / bound dimensions 1..max_d
    int d = 10;                          // regression PCA dimension
    double gamma = 1e-11;                // regression ridge parameter
    double confidence = 0.9;             // bound confidence level
    int samples = 100;                   // bound subset draws
    std::uint64_t seed = 1;
    int limit = 0;                       // keep only the first `limit` rows (0 = all)
    VarianceMode variance_mode = VarianceMode::Approximate;
    CutoffPolicy cutoff;

    std::string output_dir;              // empty = no files written
};

// ---- methods comparison (50/50 split, captured variance on the test set) ----

struct MethodsRow {
    std::string dataset;
    int d = 0;
    double subset_pca = 0.0;
    double nystrom_pca = 0.0;
    double kernel_pca = 0.0;
    double linear_pca = 0.0;
};

struct MethodsReport {
    std::vector<MethodsRow> rows;
    double sigma_used = 0.0;
    // Training-side spectra of the same fit, for majorization checks.
    Vector train_nystrom_lambdas;
    Vector train_subset_variances;
};

MethodsReport run_methods_experiment(const ExperimentConfig& config);
MethodsReport run_methods_experiment(const ExperimentConfig& config, const Dataset& data);

// ---- bound evaluation (uncentred, averaged over subset draws) ----

struct BoundReport {
    std::vector<int> dims;      // 1..max_d
    Vector bound_mean;
    Vector nystrom_diff_mean;
    Vector subset_diff_mean;
    // Per-draw values, samples x max_d, aggregation order fixed by draw index.
    Matrix bound_by_draw;
    Matrix nystrom_diff_by_draw;
    Matrix subset_diff_by_draw;
};

BoundReport run_bound_experiment(const ExperimentConfig& config);
BoundReport run_bound_experiment(const ExperimentConfig& config, const Dataset& data);

// ---- regression (75/25 split, R^2 grids and per-point predictions) ----

struct RegressionGridRow {
    std::string method;   // "nystrom_kpcr" or "nystrom_krr"
    int m = 0;
    double d_or_gamma = 0.0;
    double r2 = 0.0;
};

struct RegressionReport {
    std::vector<RegressionGridRow> grid;
    double r2_kpcr = 0.0;  // at the configured (m, d)
    double r2_krr = 0.0;   // at the configured (m, gamma)
    Vector scatter_true;
    Vector scatter_kpcr;
    Vector scatter_krr;
};

RegressionReport run_regression_experiment(const ExperimentConfig& config);
RegressionReport run_regression_experiment(const ExperimentConfig& config, const Dataset& data);

// 17-significant-digit float formatting used in every report file.
std::string format_double(double value);

} // namespace nystrompca
