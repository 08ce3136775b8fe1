#include "nystrompca/regression.hpp"

#include <cmath>

#include "nystrompca/errors.hpp"

namespace nystrompca {

RegressionModel fit_kpcr(std::shared_ptr<const FullKpcaModel> model, const Vector& y, int d) {
    if (!model) throw ConfigError("fit_kpcr: null model");
    if (y.size() != model->n()) throw ConfigError("fit_kpcr: target length mismatch");
    if (!y.allFinite()) throw ConfigError("fit_kpcr: non-finite targets");
    if (d < 1 || d > model->retained) {
        throw ConfigError("fit_kpcr: dimension exceeds retained rank");
    }
    RegressionModel reg;
    reg.kind = RegressionKind::KPCR;
    reg.full = std::move(model);
    reg.d = d;
    reg.intercept = y.mean();
    const Vector y_centered = y.array() - reg.intercept;
    // beta = Lambda_d^{-1/2} Q_d^T y'; scores are S = Q Lambda^{1/2}, so this
    // is the least-squares solution (S_d^T S_d)^{-1} S_d^T y'.
    reg.coeffs.resize(d);
    for (int j = 0; j < d; ++j) {
        reg.coeffs(j) = reg.full->eig.vectors.col(j).dot(y_centered) /
                        std::sqrt(reg.full->eig.values(j));
    }
    return reg;
}

RegressionModel fit_nystrom_kpcr(std::shared_ptr<const NystromPcaModel> model,
                                 const Vector& y, int d) {
    if (!model) throw ConfigError("fit_nystrom_kpcr: null model");
    if (y.size() != model->n) throw ConfigError("fit_nystrom_kpcr: target length mismatch");
    if (!y.allFinite()) throw ConfigError("fit_nystrom_kpcr: non-finite targets");
    if (d < 1 || d > model->retained) {
        throw NumericalError("fit_nystrom_kpcr: explained variance below cutoff at requested d");
    }
    RegressionModel reg;
    reg.kind = RegressionKind::NystromKPCR;
    reg.nystrom = std::move(model);
    reg.d = d;
    reg.intercept = y.mean();
    const Vector y_centered = y.array() - reg.intercept;
    // beta = Lambda~_d^{-1} U_d^T K'_mn y' = Lambda~_d^{-1} W_d^T y'.
    reg.coeffs.resize(d);
    for (int j = 0; j < d; ++j) {
        reg.coeffs(j) = reg.nystrom->scores.col(j).dot(y_centered) /
                        (static_cast<double>(reg.nystrom->n) * reg.nystrom->lambdas(j));
    }
    return reg;
}

RegressionModel fit_nystrom_krr(const KernelSpec& spec, const Matrix& X,
                                std::span<const int> subset_indices, const Vector& y,
                                double gamma, const CutoffPolicy& cutoff) {
    if (gamma < 0.0) throw ConfigError("fit_nystrom_krr: gamma must be nonnegative");
    if (y.size() != X.rows()) throw ConfigError("fit_nystrom_krr: target length mismatch");
    const auto m = static_cast<int>(subset_indices.size());
    if (m < 1 || m > X.rows()) throw ConfigError("fit_nystrom_krr: invalid subset size");

    RegressionModel reg;
    reg.kind = RegressionKind::NystromKRR;
    reg.spec = spec;
    reg.gamma = gamma;
    reg.subset_rows.resize(m, X.cols());
    for (int j = 0; j < m; ++j) reg.subset_rows.row(j) = X.row(subset_indices[j]);

    reg.intercept = y.mean();
    const Vector y_centered = y.array() - reg.intercept;

    const Matrix K_nm = kernel_matrix(spec, X, reg.subset_rows);
    const Matrix K_mm = kernel_matrix(spec, reg.subset_rows, reg.subset_rows);
    const Matrix system = K_nm.transpose() * K_nm + gamma * K_mm;
    const Vector rhs = K_nm.transpose() * y_centered;

    const EigenDecomposition eig = sym_eig_desc(system);
    const double threshold = cutoff.threshold(eig.values(0));
    reg.coeffs = Vector::Zero(m);
    int kept = 0;
    for (int j = 0; j < m; ++j) {
        if (eig.values(j) <= threshold) continue;
        reg.coeffs.noalias() +=
            (eig.vectors.col(j).dot(rhs) / eig.values(j)) * eig.vectors.col(j);
        ++kept;
    }
    if (gamma == 0.0 && kept < m) {
        throw NumericalError("fit_nystrom_krr: singular system at gamma = 0");
    }
    if (kept == 0) {
        throw NumericalError("fit_nystrom_krr: system is rank zero");
    }
    return reg;
}

double predict(const RegressionModel& model, const Eigen::Ref<const Vector>& x_star) {
    switch (model.kind) {
    case RegressionKind::KPCR: {
        const Vector scores = full_scores_new(*model.full, x_star);
        return model.intercept + model.coeffs.dot(scores.head(model.d));
    }
    case RegressionKind::NystromKPCR: {
        const Vector scores = nystrom_scores_new(*model.nystrom, x_star);
        return model.intercept + model.coeffs.dot(scores.head(model.d));
    }
    case RegressionKind::NystromKRR: {
        const Vector kappa = kernel_vector(model.spec, model.subset_rows, x_star);
        return model.intercept + model.coeffs.dot(kappa);
    }
    }
    throw ConfigError("predict: unknown regression kind");
}

Vector predict_all(const RegressionModel& model, const Matrix& X) {
    Vector out(X.rows());
    for (int i = 0; i < X.rows(); ++i) {
        const Vector x = X.row(i).transpose();
        out(i) = predict(model, x);
    }
    return out;
}

double r_squared(const Vector& y_true, const Vector& y_pred) {
    if (y_true.size() != y_pred.size()) throw ConfigError("r_squared: length mismatch");
    if (y_true.size() < 2) throw ConfigError("r_squared: need at least two points");
    const double mean = y_true.mean();
    const double ss_tot = (y_true.array() - mean).matrix().squaredNorm();
    if (ss_tot == 0.0) throw ConfigError("r_squared: constant y_true");
    const double ss_res = (y_true - y_pred).squaredNorm();
    return 1.0 - ss_res / ss_tot;
}

} // namespace nystrompca
