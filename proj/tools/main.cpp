#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nystrompca/errors.hpp"
#include "nystrompca/experiments.hpp"
#include "nystrompca/version.hpp"

namespace {

using nystrompca::ExperimentConfig;

void add_common_flags(CLI::App* cmd, ExperimentConfig& config, std::string& kernel_name,
                      std::string& variance_mode, std::string& cutoff_mode) {
    cmd->add_option("--data", config.data_path, "input CSV file (header row required)")
        ->required();
    cmd->add_option("--dataset-name", config.dataset_name,
                    "label used in reports (default: file stem)");
    cmd->add_option("--kernel", kernel_name, "kernel family: rbf, polynomial, cauchy")
        ->default_val("rbf");
    cmd->add_option("--sigma", config.kernel.sigma, "RBF/Cauchy bandwidth")->default_val(1.0);
    cmd->add_flag("--median-sigma", config.median_sigma,
                  "bandwidth = median pairwise distance over the Nystrom subset");
    cmd->add_option("--degree", config.kernel.degree, "polynomial degree")->default_val(2);
    cmd->add_option("--offset", config.kernel.offset, "polynomial additive constant")
        ->default_val(0.0);
    cmd->add_flag("--normalize", config.kernel.normalized,
                  "normalize the kernel to k(x,y)/sqrt(k(x,x)k(y,y))");
    cmd->add_option("--m", config.m, "Nystrom subset size")->default_val(100);
    cmd->add_option("--seed", config.seed, "random seed")->default_val(1);
    cmd->add_option("--limit", config.limit, "keep only the first N rows (0 = all)")
        ->default_val(0);
    cmd->add_option("--variance-mode", variance_mode, "total variance: exact or approximate")
        ->default_val("approximate");
    cmd->add_option("--cutoff-mode", cutoff_mode, "eigenvalue cutoff: relative or absolute")
        ->default_val("relative");
    cmd->add_option("--cutoff-value", config.cutoff.value, "eigenvalue cutoff value")
        ->default_val(1e-12);
    cmd->add_option("--ordinal-map", config.ordinal_sidecar,
                    "JSON sidecar with ordinal column orderings");
    cmd->add_option("--output", config.output_dir, "output directory")->default_val(".");
}

void finalize_config(ExperimentConfig& config, const std::string& kernel_name,
                     const std::string& variance_mode, const std::string& cutoff_mode) {
    config.kernel.family = nystrompca::kernel_family_from_name(kernel_name);
    if (variance_mode == "exact") {
        config.variance_mode = nystrompca::VarianceMode::Exact;
    } else if (variance_mode == "approximate") {
        config.variance_mode = nystrompca::VarianceMode::Approximate;
    } else {
        throw nystrompca::ConfigError("--variance-mode must be 'exact' or 'approximate'");
    }
    if (cutoff_mode == "relative") {
        config.cutoff.mode = nystrompca::CutoffPolicy::Mode::Relative;
    } else if (cutoff_mode == "absolute") {
        config.cutoff.mode = nystrompca::CutoffPolicy::Mode::Absolute;
    } else {
        throw nystrompca::ConfigError("--cutoff-mode must be 'relative' or 'absolute'");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("nystrompca ") + nystrompca::kVersion +
                 " - kernel PCA with the Nystrom method"};
    app.require_subcommand(1);

    ExperimentConfig methods_cfg, bound_cfg, regression_cfg;
    std::string methods_kernel, bound_kernel, regression_kernel;
    std::string methods_var, bound_var, regression_var;
    std::string methods_cut, bound_cut, regression_cut;
    std::string target;

    CLI::App* methods = app.add_subcommand(
        "methods", "captured-variance comparison of Nystrom/subset/full/linear PCA");
    methods_cfg.command = ExperimentConfig::Command::Methods;
    add_common_flags(methods, methods_cfg, methods_kernel, methods_var, methods_cut);
    methods->add_option("--max-d", methods_cfg.max_d, "largest PCA dimension")->default_val(10);

    CLI::App* bound = app.add_subcommand(
        "bound", "confidence bound versus realized reconstruction-error differences");
    bound_cfg.command = ExperimentConfig::Command::Bound;
    add_common_flags(bound, bound_cfg, bound_kernel, bound_var, bound_cut);
    bound->add_option("--max-d", bound_cfg.max_d, "largest PCA dimension")->default_val(10);
    bound->add_option("--confidence", bound_cfg.confidence, "confidence level in (0,1)")
        ->default_val(0.9);
    bound->add_option("--samples", bound_cfg.samples, "number of subset draws")->default_val(100);

    CLI::App* regression = app.add_subcommand(
        "regression", "Nystrom kernel PCR and KRR on a numeric target");
    regression_cfg.command = ExperimentConfig::Command::Regression;
    add_common_flags(regression, regression_cfg, regression_kernel, regression_var,
                     regression_cut);
    regression->add_option("--d", regression_cfg.d, "PCA dimension for PCR")->default_val(10);
    regression->add_option("--gamma", regression_cfg.gamma, "ridge parameter")
        ->default_val(1e-11);
    regression->add_option("--target", target, "target column name (default: last column)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (methods->parsed()) {
            finalize_config(methods_cfg, methods_kernel, methods_var, methods_cut);
            const auto report = nystrompca::run_methods_experiment(methods_cfg);
            std::printf("methods: %zu rows written to %s (sigma=%s)\n", report.rows.size(),
                        methods_cfg.output_dir.c_str(),
                        nystrompca::format_double(report.sigma_used).c_str());
        } else if (bound->parsed()) {
            finalize_config(bound_cfg, bound_kernel, bound_var, bound_cut);
            const auto report = nystrompca::run_bound_experiment(bound_cfg);
            std::printf("bound: %zu dimensions x %d draws written to %s\n", report.dims.size(),
                        bound_cfg.samples, bound_cfg.output_dir.c_str());
        } else {
            finalize_config(regression_cfg, regression_kernel, regression_var, regression_cut);
            if (!target.empty()) regression_cfg.target = target;
            const auto report = nystrompca::run_regression_experiment(regression_cfg);
            std::printf("regression: R2 kpcr=%s krr=%s, files written to %s\n",
                        nystrompca::format_double(report.r2_kpcr).c_str(),
                        nystrompca::format_double(report.r2_krr).c_str(),
                        regression_cfg.output_dir.c_str());
        }
    } catch (const nystrompca::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nystrompca::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
