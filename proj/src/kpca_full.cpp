#include "nystrompca/kpca_full.hpp"

#include <cmath>

#include "nystrompca/errors.hpp"

namespace nystrompca {

Matrix center_kernel_matrix(const Matrix& K) {
    if (K.rows() != K.cols()) {
        throw ConfigError("center_kernel_matrix: matrix is not square");
    }
    const auto n = static_cast<int>(K.rows());
    const Vector row_means = K.rowwise().mean();
    const Vector col_means = K.colwise().mean();
    const double grand_mean = K.mean();
    Matrix centered(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            centered(i, j) = K(i, j) - row_means(i) - col_means(j) + grand_mean;
        }
    }
    return centered;
}

FullKpcaModel fit_full_kpca(const KernelSpec& spec, const Matrix& X,
                            const CutoffPolicy& cutoff) {
    if (X.rows() < 2) {
        throw ConfigError("fit_full_kpca: need at least two data points");
    }
    if (!X.allFinite()) throw ConfigError("fit_full_kpca: non-finite data");
    FullKpcaModel model;
    model.spec = spec;
    model.train = X;

    const Matrix K = kernel_matrix(spec, X, X);
    model.row_means = K.rowwise().mean();
    model.grand_mean = K.mean();

    model.eig = sym_eig_desc(center_kernel_matrix(K));
    const auto n = static_cast<int>(X.rows());
    const double max_eig = model.eig.values.size() > 0 ? model.eig.values(0) : 0.0;
    model.cutoff_threshold = cutoff.threshold(max_eig);

    int retained = 0;
    while (retained < n && model.eig.values(retained) > model.cutoff_threshold) ++retained;
    model.retained = retained;
    model.degenerate = retained == 0;

    model.scores.resize(n, retained);
    model.explained_variance.resize(retained);
    for (int j = 0; j < retained; ++j) {
        const double lambda = model.eig.values(j);
        Vector column = model.eig.vectors.col(j) * std::sqrt(lambda);
        // Midrange sign rule: make the range of each score dimension mostly
        // positive; the eigenvector flips with its scores.
        if (column.maxCoeff() + column.minCoeff() < 0.0) {
            column = -column;
            model.eig.vectors.col(j) = -model.eig.vectors.col(j);
        }
        model.scores.col(j) = column;
        model.explained_variance(j) = lambda / n;
    }
    return model;
}

Vector full_centered_kernel_vector(const FullKpcaModel& model,
                                   const Eigen::Ref<const Vector>& x_star) {
    if (x_star.size() != model.train.cols()) {
        throw ConfigError("full_scores_new: query dimension mismatch");
    }
    Vector kappa = kernel_vector(model.spec, model.train, x_star);
    const double kappa_mean = kappa.mean();
    return kappa.array() - kappa_mean - model.row_means.array() + model.grand_mean;
}

Vector full_scores_new(const FullKpcaModel& model,
                       const Eigen::Ref<const Vector>& x_star) {
    if (model.retained == 0) {
        throw NumericalError("full_scores_new: model has zero retained components");
    }
    const Vector centered = full_centered_kernel_vector(model, x_star);
    Vector scores(model.retained);
    for (int j = 0; j < model.retained; ++j) {
        scores(j) = model.eig.vectors.col(j).dot(centered) / std::sqrt(model.eig.values(j));
    }
    return scores;
}

} // namespace nystrompca
