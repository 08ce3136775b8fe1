#pragma once

#include "nystrompca/eigen_utils.hpp"

namespace nystrompca {

// Kernel PCA on the full centred kernel matrix. Reference method: O(n^2)
// memory and O(n^3) time, used for comparisons and small problems.
struct FullKpcaModel {
    KernelSpec spec;
    Matrix train;             // n x p training rows, needed to form kappa(x*)
    EigenDecomposition eig;   // full spectrum of K'
    int retained = 0;         // eigenvalues above the cutoff
    Matrix scores;            // n x retained, S = Q Lambda^{1/2}
    Vector explained_variance; // retained entries, Lambda / n
    Vector row_means;          // K 1_n (row means of the uncentred K)
    double grand_mean = 0.0;   // 1_n^T K 1_n
    double cutoff_threshold = 0.0;
    bool degenerate = false;   // K' vanished (all points identical)

    int n() const { return static_cast<int>(train.rows()); }
};

// K' = K - 1K - K1 + 1K1 with 1 the n x n matrix of entries 1/n.
Matrix center_kernel_matrix(const Matrix& K);

FullKpcaModel fit_full_kpca(const KernelSpec& spec, const Matrix& X,
                            const CutoffPolicy& cutoff = {});

// kappa'(x*) = kappa(x*) - 1 kappa(x*) - K 1_n + 1 K 1_n.
Vector full_centered_kernel_vector(const FullKpcaModel& model,
                                   const Eigen::Ref<const Vector>& x_star);

// Lambda^{-1/2} Q^T kappa'(x*) over the retained components.
Vector full_scores_new(const FullKpcaModel& model,
                       const Eigen::Ref<const Vector>& x_star);

} // namespace nystrompca
