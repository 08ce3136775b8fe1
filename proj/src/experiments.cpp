#include "nystrompca/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "nystrompca/bound.hpp"
#include "nystrompca/errors.hpp"
#include "nystrompca/kpca_full.hpp"
#include "nystrompca/regression.hpp"
#include "nystrompca/subset_pca.hpp"
#include "nystrompca/version.hpp"
#include "parallel.hpp"

namespace nystrompca {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

Dataset load_for_config(const ExperimentConfig& config) {
    std::optional<std::string> target;
    if (config.command == ExperimentConfig::Command::Regression) {
        target = config.target; // resolved to the last column after loading if empty
    }
    Dataset data = load_csv(config.data_path, /*has_header=*/true, target);
    if (config.command == ExperimentConfig::Command::Regression && !target) {
        data.target_column = data.columns.back().name;
    }
    if (config.limit > 0 && config.limit < data.row_count) {
        std::vector<int> head(static_cast<std::size_t>(config.limit));
        std::iota(head.begin(), head.end(), 0);
        data = take_rows(data, head);
    }
    return data;
}

std::string dataset_label(const ExperimentConfig& config) {
    if (!config.dataset_name.empty()) return config.dataset_name;
    if (!config.data_path.empty()) return fs::path(config.data_path).stem().string();
    return "data";
}

PreprocessOptions sidecar_options(const ExperimentConfig& config) {
    if (config.ordinal_sidecar.empty()) return {};
    return load_ordinal_sidecar(config.ordinal_sidecar);
}

KernelSpec resolve_kernel(const ExperimentConfig& config, const Matrix& subset_rows) {
    KernelSpec kernel = config.kernel;
    if (config.median_sigma) {
        kernel.sigma = median_bandwidth(subset_rows);
    }
    kernel.validate();
    return kernel;
}

Matrix rows_of(const Matrix& X, std::span<const int> rows) {
    Matrix out(static_cast<int>(rows.size()), X.cols());
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) out.row(i) = X.row(rows[i]);
    return out;
}

// Population variance of each column about its own mean.
Vector column_variances(const Matrix& columns) {
    Vector out(columns.cols());
    for (int j = 0; j < columns.cols(); ++j) {
        const double mean = columns.col(j).mean();
        out(j) = (columns.col(j).array() - mean).square().mean();
    }
    return out;
}

// (1/t) sum k(x_i,x_i) - (1/t^2) sum_{i,l} k(x_i,x_l), streamed.
double feature_space_variance(const KernelSpec& kernel, const Matrix& X) {
    const auto t = static_cast<int>(X.rows());
    double diag = 0.0;
    double cross = 0.0;
    for (int i = 0; i < t; ++i) {
        diag += eval_kernel(kernel, X.row(i).transpose(), X.row(i).transpose());
        for (int l = 0; l < t; ++l) {
            cross += eval_kernel(kernel, X.row(i).transpose(), X.row(l).transpose());
        }
    }
    return diag / t - cross / (static_cast<double>(t) * t);
}

void ensure_output_dir(const std::string& dir) {
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir + "'");
}

void write_text(const std::string& dir, const std::string& name, const std::string& text) {
    if (dir.empty()) return;
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
}

json config_to_json(const ExperimentConfig& config, const KernelSpec& kernel_used) {
    json blob;
    switch (config.command) {
    case ExperimentConfig::Command::Methods: blob["command"] = "methods"; break;
    case ExperimentConfig::Command::Bound: blob["command"] = "bound"; break;
    case ExperimentConfig::Command::Regression: blob["command"] = "regression"; break;
    }
    blob["library_version"] = kVersion;
    blob["data_path"] = config.data_path;
    blob["dataset"] = dataset_label(config);
    blob["kernel"] = {{"family", kernel_family_name(kernel_used.family)},
                      {"sigma", kernel_used.sigma},
                      {"offset", kernel_used.offset},
                      {"degree", kernel_used.degree},
                      {"normalized", kernel_used.normalized}};
    blob["median_sigma"] = config.median_sigma;
    blob["m"] = config.m;
    blob["max_d"] = config.max_d;
    blob["d"] = config.d;
    blob["gamma"] = config.gamma;
    blob["confidence"] = config.confidence;
    blob["samples"] = config.samples;
    blob["seed"] = config.seed;
    blob["limit"] = config.limit;
    blob["variance_mode"] =
        config.variance_mode == VarianceMode::Exact ? "exact" : "approximate";
    blob["cutoff"] = {{"mode", config.cutoff.mode == CutoffPolicy::Mode::Absolute ? "absolute"
                                                                                  : "relative"},
                      {"value", config.cutoff.value}};
    if (config.target) blob["target"] = *config.target;
    return blob;
}

void write_run_json(const ExperimentConfig& config, const KernelSpec& kernel_used) {
    if (config.output_dir.empty()) return;
    write_text(config.output_dir, "run.json", config_to_json(config, kernel_used).dump(2) + "\n");
}

} // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

// ---------------------------------------------------------------- methods --

MethodsReport run_methods_experiment(const ExperimentConfig& config) {
    return run_methods_experiment(config, load_for_config(config));
}

MethodsReport run_methods_experiment(const ExperimentConfig& config, const Dataset& data) {
    const auto [train_idx, test_idx] = train_test_split(data.row_count, 0.5, config.seed);
    const Dataset train_ds = take_rows(data, train_idx);
    const Dataset test_ds = take_rows(data, test_idx);
    auto [X_train, X_test, prep] = preprocess(train_ds, test_ds, sidecar_options(config));

    const auto n_train = static_cast<int>(X_train.rows());
    if (config.m > n_train) {
        throw ConfigError("methods: subset size exceeds the training rows (" +
                          std::to_string(n_train) + ")");
    }
    const std::vector<int> order = sample_subset(n_train, config.m, config.seed);
    const std::vector<int> subset(order.begin(), order.begin() + config.m);

    const KernelSpec kernel = resolve_kernel(config, rows_of(X_train, subset));
    const int max_d = std::min(config.max_d, config.m);

    const NystromPcaModel nystrom =
        fit_nystrom_kpca(kernel, X_train, subset, config.variance_mode, config.cutoff);
    const FullKpcaModel full = fit_full_kpca(kernel, X_train, config.cutoff);

    // Subset PCA on the same draw: eigenpairs of (1/m) K'_mm.
    const Matrix X_perm = rows_of(X_train, order);
    const CenteredNystromMatrices centered = center_nystrom_matrices(
        kernel_matrix(kernel, X_perm, nystrom.subset_rows),
        kernel_matrix(kernel, nystrom.subset_rows, nystrom.subset_rows),
        config.cutoff.value);
    const SubsetPcaResult subset_pca =
        fit_subset_pca(centered, n_train, nystrom.total_variance, config.cutoff);
    const EigenDecomposition subset_eig = sym_eig_desc(centered.Kc_mm / config.m);
    const double subset_thr = config.cutoff.threshold(subset_eig.values(0));

    // Test-set scores for the kernel methods, top max_d components each.
    const auto n_test = static_cast<int>(X_test.rows());
    Matrix ny_scores(n_test, max_d);
    Matrix full_scores(n_test, std::min(max_d, full.retained));
    Matrix sub_scores(n_test, max_d);
    for (int i = 0; i < n_test; ++i) {
        const Vector kc = nystrom_centered_kernel_vector(nystrom, X_test.row(i).transpose());
        ny_scores.row(i) = (nystrom.U.leftCols(max_d).transpose() * kc).transpose();
        for (int j = 0; j < max_d; ++j) {
            sub_scores(i, j) =
                subset_eig.values(j) > subset_thr
                    ? subset_eig.vectors.col(j).dot(kc) /
                          std::sqrt(config.m * subset_eig.values(j))
                    : 0.0;
        }
        const Vector fs = full_scores_new(full, X_test.row(i).transpose());
        full_scores.row(i) = fs.head(full_scores.cols()).transpose();
    }
    const double feature_total = feature_space_variance(kernel, X_test);

    // Linear PCA reference on the standardized inputs.
    const Matrix covariance = X_train.transpose() * X_train / n_train;
    const EigenDecomposition lin_eig = sym_eig_desc(covariance);
    const int lin_d = std::min<int>(max_d, static_cast<int>(X_train.cols()));
    Matrix lin_scores = X_test * lin_eig.vectors.leftCols(lin_d);
    const Eigen::RowVectorXd test_mean = X_test.colwise().mean();
    const double input_total = (X_test.rowwise() - test_mean).squaredNorm() / n_test;

    const Vector ny_var = column_variances(ny_scores);
    const Vector full_var = column_variances(full_scores);
    const Vector sub_var = column_variances(sub_scores);
    const Vector lin_var = column_variances(lin_scores);

    MethodsReport report;
    report.sigma_used = kernel.sigma;
    report.train_nystrom_lambdas = nystrom.lambdas;
    report.train_subset_variances = subset_pca.variances;
    const std::string label = dataset_label(config);
    double ny_sum = 0.0, full_sum = 0.0, sub_sum = 0.0, lin_sum = 0.0;
    for (int d = 1; d <= max_d; ++d) {
        ny_sum += ny_var(d - 1);
        sub_sum += sub_var(d - 1);
        if (d <= full_var.size()) full_sum += full_var(d - 1);
        if (d <= lin_var.size()) lin_sum += lin_var(d - 1);
        MethodsRow row;
        row.dataset = label;
        row.d = d;
        row.subset_pca = sub_sum / feature_total;
        row.nystrom_pca = ny_sum / feature_total;
        row.kernel_pca = full_sum / feature_total;
        row.linear_pca = lin_sum / input_total;
        report.rows.push_back(std::move(row));
    }

    if (!config.output_dir.empty()) {
        ensure_output_dir(config.output_dir);
        std::string csv = "# centering=centered\n";
        csv += "dataset,d,subset_pca,nystrom_pca,kernel_pca,linear_pca\n";
        for (const MethodsRow& row : report.rows) {
            csv += row.dataset + "," + std::to_string(row.d) + "," +
                   format_double(row.subset_pca) + "," + format_double(row.nystrom_pca) + "," +
                   format_double(row.kernel_pca) + "," + format_double(row.linear_pca) + "\n";
        }
        write_text(config.output_dir, "methods.csv", csv);
        write_run_json(config, kernel);
    }
    return report;
}

// ------------------------------------------------------------------ bound --

BoundReport run_bound_experiment(const ExperimentConfig& config) {
    return run_bound_experiment(config, load_for_config(config));
}

BoundReport run_bound_experiment(const ExperimentConfig& config, const Dataset& data) {
    auto [X, X_unused, prep] = preprocess(data, data, sidecar_options(config));
    (void)X_unused;
    const auto n = static_cast<int>(X.rows());
    if (config.m > n) throw ConfigError("bound: subset size exceeds the data rows");
    if (config.samples < 1) throw ConfigError("bound: need at least one sample");

    // Bandwidth resolved once, from the first draw's subset.
    const std::vector<int> first_order = sample_subset(n, config.m, config.seed);
    const KernelSpec kernel = resolve_kernel(
        config, rows_of(X, std::span<const int>(first_order).first(config.m)));
    const double B = kernel.sup_bound();
    if (!std::isfinite(B)) {
        throw ConfigError("bound: kernel is unbounded; use --normalize for the polynomial kernel");
    }
    const double delta = delta_from_confidence(config.confidence);
    const int max_d = std::min(config.max_d, config.m);

    // Everything below is uncentred: the bound's hypotheses assume zero-mean
    // data in feature space, so the reference spectra skip the centring step.
    const Matrix K_full = kernel_matrix(kernel, X, X);
    const Vector lambda_full = sym_eig_desc(K_full / n).values;

    BoundReport report;
    report.dims.resize(static_cast<std::size_t>(max_d));
    std::iota(report.dims.begin(), report.dims.end(), 1);
    report.bound_by_draw.resize(config.samples, max_d);
    report.nystrom_diff_by_draw.resize(config.samples, max_d);
    report.subset_diff_by_draw.resize(config.samples, max_d);

    detail::parallel_for(config.samples, [&](int draw) {
        const std::vector<int> order =
            sample_subset(n, config.m, config.seed + static_cast<std::uint64_t>(draw));
        const std::span<const int> subset(order.data(), static_cast<std::size_t>(config.m));
        const Matrix subset_rows = rows_of(X, subset);
        const Matrix K_nm = kernel_matrix(kernel, X, subset_rows);
        const Matrix K_mm = kernel_matrix(kernel, subset_rows, subset_rows);

        const EigenDecomposition eig_m = sym_eig_desc(K_mm / config.m);
        const double thr = config.cutoff.threshold(eig_m.values(0));

        // Uncentred Nystrom spectrum; K_mm = m * (K_mm / m) shares eigenvectors.
        Matrix inv_sqrt = Matrix::Zero(config.m, config.m);
        for (int j = 0; j < config.m; ++j) {
            if (eig_m.values(j) <= thr) continue;
            inv_sqrt.noalias() += (1.0 / std::sqrt(config.m * eig_m.values(j))) *
                                  eig_m.vectors.col(j) * eig_m.vectors.col(j).transpose();
        }
        const Matrix projected = K_nm * inv_sqrt;
        const Vector lambda_ny =
            sym_eig_desc(projected.transpose() * projected / n).values;

        // Uncentred subset-PCA variances from the raw blocks.
        Vector subset_var = Vector::Zero(config.m);
        for (int j = 0; j < config.m; ++j) {
            if (eig_m.values(j) > thr) {
                subset_var(j) = (K_nm * eig_m.vectors.col(j)).squaredNorm() /
                                (static_cast<double>(n) * config.m * eig_m.values(j));
            }
        }

        double full_sum = 0.0, ny_sum = 0.0, sub_sum = 0.0;
        for (int d = 1; d <= max_d; ++d) {
            full_sum += lambda_full(d - 1);
            ny_sum += lambda_ny(d - 1);
            sub_sum += subset_var(d - 1);
            report.bound_by_draw(draw, d - 1) =
                confidence_bound(eig_m.values, config.m, n, B, delta, d).bound;
            report.nystrom_diff_by_draw(draw, d - 1) = full_sum - ny_sum;
            report.subset_diff_by_draw(draw, d - 1) = full_sum - sub_sum;
        }
    });

    report.bound_mean = report.bound_by_draw.colwise().mean().transpose();
    report.nystrom_diff_mean = report.nystrom_diff_by_draw.colwise().mean().transpose();
    report.subset_diff_mean = report.subset_diff_by_draw.colwise().mean().transpose();

    if (!config.output_dir.empty()) {
        ensure_output_dir(config.output_dir);
        std::string csv = "# centering=uncentered\n";
        csv += "d,conf_bound_mean,nystrom_diff_mean,subset_diff_mean\n";
        for (int d = 1; d <= max_d; ++d) {
            csv += std::to_string(d) + "," + format_double(report.bound_mean(d - 1)) + "," +
                   format_double(report.nystrom_diff_mean(d - 1)) + "," +
                   format_double(report.subset_diff_mean(d - 1)) + "\n";
        }
        write_text(config.output_dir, "bound.csv", csv);
        write_run_json(config, kernel);
    }
    return report;
}

// ------------------------------------------------------------- regression --

namespace {

double safe_r_squared(const Vector& y_true, const Vector& y_pred) {
    const double mean = y_true.mean();
    if ((y_true.array() - mean).abs().maxCoeff() == 0.0) return 0.0; // constant target
    return r_squared(y_true, y_pred);
}

std::vector<int> quarter_grid(int top, int floor_value) {
    std::vector<int> grid;
    for (int k = 1; k <= 4; ++k) {
        const int v = std::max(floor_value, top * k / 4);
        if (grid.empty() || grid.back() != v) grid.push_back(v);
    }
    return grid;
}

} // namespace

RegressionReport run_regression_experiment(const ExperimentConfig& config) {
    return run_regression_experiment(config, load_for_config(config));
}

RegressionReport run_regression_experiment(const ExperimentConfig& config, const Dataset& data) {
    if (!data.target_column) throw ConfigError("regression: dataset has no target column");
    const auto [train_idx, test_idx] = train_test_split(data.row_count, 0.25, config.seed);
    const Dataset train_ds = take_rows(data, train_idx);
    const Dataset test_ds = take_rows(data, test_idx);
    auto [X_train, X_test, prep] = preprocess(train_ds, test_ds, sidecar_options(config));
    const Vector y_train = train_ds.target_values();
    const Vector y_test = test_ds.target_values();

    const auto n_train = static_cast<int>(X_train.rows());
    if (config.m > n_train) throw ConfigError("regression: subset size exceeds training rows");
    if (config.d > config.m) throw ConfigError("regression: d exceeds m");

    const std::vector<int> scatter_order = sample_subset(n_train, config.m, config.seed);
    const std::vector<int> scatter_subset(scatter_order.begin(),
                                          scatter_order.begin() + config.m);
    const KernelSpec kernel = resolve_kernel(config, rows_of(X_train, scatter_subset));

    RegressionReport report;

    // Grid rows; every combination draws its own subset, seeded by position.
    const std::vector<int> m_grid = quarter_grid(config.m, 2);
    const std::vector<int> d_grid = quarter_grid(config.d, 1);
    std::vector<double> gamma_grid;
    if (config.gamma > 0.0) {
        for (int e = -2; e <= 2; ++e) gamma_grid.push_back(config.gamma * std::pow(10.0, e));
    } else {
        gamma_grid.push_back(0.0);
    }

    std::uint64_t combo = 0;
    for (int mi : m_grid) {
        const std::vector<int> order =
            sample_subset(n_train, mi, config.seed + (++combo));
        const std::vector<int> subset(order.begin(), order.begin() + mi);
        auto ny = std::make_shared<const NystromPcaModel>(fit_nystrom_kpca(
            kernel, X_train, subset, config.variance_mode, config.cutoff));
        for (int di : d_grid) {
            double r2 = std::numeric_limits<double>::quiet_NaN();
            if (di <= mi) {
                try {
                    const RegressionModel reg = fit_nystrom_kpcr(ny, y_train, di);
                    r2 = safe_r_squared(y_test, predict_all(reg, X_test));
                } catch (const NumericalError&) {
                    // cell unavailable (explained variance below cutoff)
                }
            }
            report.grid.push_back({"nystrom_kpcr", mi, static_cast<double>(di), r2});
        }
        for (double gi : gamma_grid) {
            double r2 = std::numeric_limits<double>::quiet_NaN();
            try {
                const RegressionModel reg =
                    fit_nystrom_krr(kernel, X_train, subset, y_train, gi, config.cutoff);
                r2 = safe_r_squared(y_test, predict_all(reg, X_test));
            } catch (const NumericalError&) {
            }
            report.grid.push_back({"nystrom_krr", mi, gi, r2});
        }
    }

    // Scatter data at the configured (m, d, gamma).
    auto ny = std::make_shared<const NystromPcaModel>(fit_nystrom_kpca(
        kernel, X_train, scatter_subset, config.variance_mode, config.cutoff));
    const RegressionModel kpcr = fit_nystrom_kpcr(ny, y_train, config.d);
    const RegressionModel krr =
        fit_nystrom_krr(kernel, X_train, scatter_subset, y_train, config.gamma, config.cutoff);
    report.scatter_true = y_test;
    report.scatter_kpcr = predict_all(kpcr, X_test);
    report.scatter_krr = predict_all(krr, X_test);
    report.r2_kpcr = safe_r_squared(y_test, report.scatter_kpcr);
    report.r2_krr = safe_r_squared(y_test, report.scatter_krr);

    if (!config.output_dir.empty()) {
        ensure_output_dir(config.output_dir);
        std::string grid_csv = "method,m,d_or_gamma,r2\n";
        for (const RegressionGridRow& row : report.grid) {
            grid_csv += row.method + "," + std::to_string(row.m) + "," +
                        format_double(row.d_or_gamma) + "," + format_double(row.r2) + "\n";
        }
        write_text(config.output_dir, "regression_grid.csv", grid_csv);

        std::string scatter_csv = "y_true,y_pred_nystrom_kpcr,y_pred_nystrom_krr\n";
        for (int i = 0; i < report.scatter_true.size(); ++i) {
            scatter_csv += format_double(report.scatter_true(i)) + "," +
                           format_double(report.scatter_kpcr(i)) + "," +
                           format_double(report.scatter_krr(i)) + "\n";
        }
        write_text(config.output_dir, "regression_scatter.csv", scatter_csv);
        write_run_json(config, kernel);
    }
    return report;
}

} // namespace nystrompca
