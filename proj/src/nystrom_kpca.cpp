#include "nystrompca/nystrom_kpca.hpp"

#include <algorithm>
#include <cmath>

#include "nystrompca/errors.hpp"

namespace nystrompca {

namespace {

// Permutation [subset..., remaining in original order].
std::vector<int> subset_first_order(int n, std::span<const int> subset) {
    std::vector<char> in_subset(static_cast<std::size_t>(n), 0);
    std::vector<int> order(subset.begin(), subset.end());
    order.reserve(static_cast<std::size_t>(n));
    for (int idx : subset) {
        if (idx < 0 || idx >= n) {
            throw ConfigError("subset index out of range");
        }
        if (in_subset[static_cast<std::size_t>(idx)]) {
            throw ConfigError("duplicate subset index");
        }
        in_subset[static_cast<std::size_t>(idx)] = 1;
    }
    for (int i = 0; i < n; ++i) {
        if (!in_subset[static_cast<std::size_t>(i)]) order.push_back(i);
    }
    return order;
}

Matrix rows_of(const Matrix& X, std::span<const int> rows) {
    Matrix out(static_cast<int>(rows.size()), X.cols());
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        out.row(i) = X.row(rows[static_cast<std::size_t>(i)]);
    }
    return out;
}

} // namespace

CenteredNystromMatrices center_nystrom_matrices(const Matrix& K_nm, const Matrix& K_mm,
                                                double cutoff) {
    const auto n = static_cast<int>(K_nm.rows());
    const auto m = static_cast<int>(K_nm.cols());
    if (K_mm.rows() != m || K_mm.cols() != m) {
        throw ConfigError("center_nystrom_matrices: K_mm shape mismatch");
    }
    if (n < m) {
        throw ConfigError("center_nystrom_matrices: fewer rows than subset columns");
    }
    const double scale = std::max(1.0, K_nm.cwiseAbs().maxCoeff());
    if ((K_nm.topRows(m) - K_mm).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw ConfigError("center_nystrom_matrices: first m rows of K_nm must equal K_mm");
    }

    const Matrix inv_mm = psd_pseudo_inverse(K_mm, cutoff);
    const Vector a = K_nm.colwise().mean();       // (1/n) K_mn 1
    const Vector ea = inv_mm * a;
    const Vector bt = K_nm * ea;                  // row means of Kt
    const double mu = a.dot(ea);                  // grand mean of Kt

    CenteredNystromMatrices out;
    out.Kc_nm = K_nm;
    out.Kc_nm.rowwise() -= a.transpose();
    out.Kc_nm.colwise() -= bt;
    out.Kc_nm.array() += mu;

    out.Kc_mm = K_mm;
    out.Kc_mm.rowwise() -= a.transpose();
    out.Kc_mm.colwise() -= a;
    out.Kc_mm.array() += mu;
    return out;
}

double total_variance(const KernelSpec& spec, const Matrix& X,
                      std::span<const int> subset, VarianceMode mode) {
    const auto n = static_cast<int>(X.rows());
    if (n == 0) throw ConfigError("total_variance: empty data");
    const std::vector<int> order = subset_first_order(n, subset);
    const auto m = static_cast<int>(subset.size());

    double diag_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        diag_sum += eval_kernel(spec, X.row(i).transpose(), X.row(i).transpose());
    }

    double mean_term = 0.0;
    if (mode == VarianceMode::Exact) {
        // Full n^2 pair sum over the subset-first row order, streamed.
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto xi = X.row(order[static_cast<std::size_t>(i)]).transpose();
            for (int l = 0; l < n; ++l) {
                sum += eval_kernel(spec, xi,
                                   X.row(order[static_cast<std::size_t>(l)]).transpose());
            }
        }
        mean_term = sum / (static_cast<double>(n) * n);
    } else {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto xi = X.row(order[static_cast<std::size_t>(i)]).transpose();
            for (int j = 0; j < m; ++j) {
                sum += eval_kernel(spec, xi,
                                   X.row(order[static_cast<std::size_t>(j)]).transpose());
            }
        }
        mean_term = sum / (static_cast<double>(n) * m);
    }
    return diag_sum / n - mean_term;
}

NystromPcaModel fit_nystrom_kpca(const KernelSpec& spec, const Matrix& X,
                                 std::span<const int> subset_indices,
                                 VarianceMode variance_mode, const CutoffPolicy& cutoff) {
    const auto n = static_cast<int>(X.rows());
    const auto m = static_cast<int>(subset_indices.size());
    if (m < 1) throw ConfigError("fit_nystrom_kpca: empty subset");
    if (m > n) throw ConfigError("fit_nystrom_kpca: subset larger than dataset");
    if (!X.allFinite()) throw ConfigError("fit_nystrom_kpca: non-finite data");

    const std::vector<int> order = subset_first_order(n, subset_indices);

    NystromPcaModel model;
    model.spec = spec;
    model.subset_indices.assign(subset_indices.begin(), subset_indices.end());
    model.subset_rows = rows_of(X, subset_indices);
    model.n = n;
    model.variance_mode = variance_mode;

    const Matrix X_perm = rows_of(X, order);
    const Matrix K_nm = kernel_matrix(spec, X_perm, model.subset_rows);
    const Matrix K_mm = K_nm.topRows(m);

    const EigenDecomposition eig_mm = sym_eig_desc(K_mm);
    const double thr_mm = cutoff.threshold(eig_mm.values(0));
    Matrix inv_mm = Matrix::Zero(m, m);
    int rank_mm = 0;
    for (int j = 0; j < m; ++j) {
        if (eig_mm.values(j) <= thr_mm) continue;
        inv_mm.noalias() +=
            (1.0 / eig_mm.values(j)) * eig_mm.vectors.col(j) * eig_mm.vectors.col(j).transpose();
        ++rank_mm;
    }
    if (rank_mm == 0) {
        throw NumericalError("fit_nystrom_kpca: subset kernel matrix is rank zero");
    }
    model.newpoint_a = K_nm.colwise().mean();
    model.phi0_coeffs = inv_mm * model.newpoint_a;
    model.newpoint_mu = model.newpoint_a.dot(model.phi0_coeffs);

    // Centred blocks; all Kt terms reduce to rank-one corrections.
    Matrix Kc_nm = K_nm;
    {
        const Vector bt = K_nm * model.phi0_coeffs;
        Kc_nm.rowwise() -= model.newpoint_a.transpose();
        Kc_nm.colwise() -= bt;
        Kc_nm.array() += model.newpoint_mu;
    }
    Matrix Kc_mm = K_mm;
    Kc_mm.rowwise() -= model.newpoint_a.transpose();
    Kc_mm.colwise() -= model.newpoint_a;
    Kc_mm.array() += model.newpoint_mu;

    model.total_variance = total_variance(spec, X, subset_indices, variance_mode);

    const EigenDecomposition eig_cmm = sym_eig_desc(Kc_mm);
    const double thr_cmm = cutoff.threshold(eig_cmm.values(0));

    Matrix inv_sqrt = Matrix::Zero(m, m);
    int kept = 0;
    for (int j = 0; j < m; ++j) {
        if (eig_cmm.values(j) <= thr_cmm) continue;
        inv_sqrt.noalias() += (1.0 / std::sqrt(eig_cmm.values(j))) * eig_cmm.vectors.col(j) *
                              eig_cmm.vectors.col(j).transpose();
        ++kept;
    }
    if (kept == 0) {
        // Centred subset block vanished: every point projects onto the mean.
        model.degenerate = true;
        model.lambdas = Vector::Zero(m);
        model.U = Matrix::Zero(m, m);
        model.scores = Matrix::Zero(n, m);
        return model;
    }

    const Matrix projected = Kc_nm * inv_sqrt;                  // K'_nm K'_mm^{-1/2}
    const Matrix K_tilde = projected.transpose() * projected / n;
    const EigenDecomposition eig_t = sym_eig_desc(K_tilde);

    model.lambdas = eig_t.values;
    for (int j = 0; j < m; ++j) {
        if (model.lambdas(j) < 0.0) {
            if (model.lambdas(j) < -1e-10) {
                throw NumericalError("fit_nystrom_kpca: negative explained variance");
            }
            model.lambdas(j) = 0.0;
        }
    }
    model.U = inv_sqrt * eig_t.vectors;
    Matrix W = projected * eig_t.vectors;

    for (int j = 0; j < m; ++j) {
        if (W.col(j).maxCoeff() + W.col(j).minCoeff() < 0.0) {
            W.col(j) = -W.col(j);
            model.U.col(j) = -model.U.col(j);
        }
    }

    model.cutoff_threshold = cutoff.threshold(model.lambdas(0));
    while (model.retained < m && model.lambdas(model.retained) > model.cutoff_threshold) {
        ++model.retained;
    }

    // Rows back to the original data order.
    model.scores.resize(n, m);
    for (int i = 0; i < n; ++i) {
        model.scores.row(order[static_cast<std::size_t>(i)]) = W.row(i);
    }
    return model;
}

Vector nystrom_centered_kernel_vector(const NystromPcaModel& model,
                                      const Eigen::Ref<const Vector>& x_star) {
    if (x_star.size() != model.subset_rows.cols()) {
        throw ConfigError("nystrom_scores_new: query dimension mismatch");
    }
    Vector kappa = kernel_vector(model.spec, model.subset_rows, x_star);
    const double projected_mean = model.phi0_coeffs.dot(kappa);
    return kappa.array() - model.newpoint_a.array() - projected_mean + model.newpoint_mu;
}

Vector nystrom_scores_new(const NystromPcaModel& model,
                          const Eigen::Ref<const Vector>& x_star) {
    return model.U.transpose() * nystrom_centered_kernel_vector(model, x_star);
}

double nystrom_reconstruction_error(const NystromPcaModel& model, int d) {
    if (d < 0 || d > model.m()) {
        throw ConfigError("nystrom_reconstruction_error: dimension out of range");
    }
    double error = model.total_variance - model.lambdas.head(d).sum();
    if (error < 0.0) {
        if (error < -1e-10) {
            throw NumericalError("nystrom_reconstruction_error: negative reconstruction error");
        }
        error = 0.0;
    }
    return error;
}

ClassicNystromEigs classic_nystrom_eigs(const Matrix& K_nm, const Matrix& K_mm,
                                        double cutoff, int num_components) {
    const auto n = static_cast<int>(K_nm.rows());
    const auto m = static_cast<int>(K_nm.cols());
    if (K_mm.rows() != m || K_mm.cols() != m) {
        throw ConfigError("classic_nystrom_eigs: K_mm shape mismatch");
    }
    const EigenDecomposition eig = sym_eig_desc(K_mm);

    ClassicNystromEigs out;
    out.values = (static_cast<double>(n) / m) * eig.values;
    out.vectors = Matrix::Zero(n, m);
    while (out.rank < m && eig.values(out.rank) > cutoff) ++out.rank;
    if (num_components >= 0 && num_components > out.rank) {
        throw NumericalError("classic_nystrom_eigs: requested component has zero eigenvalue");
    }
    const int use = num_components >= 0 ? num_components : out.rank;
    const double root = std::sqrt(static_cast<double>(m) / n);
    for (int j = 0; j < use; ++j) {
        out.vectors.col(j) = root / eig.values(j) * (K_nm * eig.vectors.col(j));
    }
    return out;
}

} // namespace nystrompca
