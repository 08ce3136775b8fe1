#include "nystrompca/subset_pca.hpp"

#include "nystrompca/errors.hpp"

namespace nystrompca {

SubsetPcaResult fit_subset_pca(const CenteredNystromMatrices& centered, int n,
                               double total_variance, const CutoffPolicy& cutoff) {
    const auto m = static_cast<int>(centered.Kc_mm.rows());
    if (centered.Kc_nm.cols() != m) {
        throw ConfigError("fit_subset_pca: block shapes disagree");
    }
    if (n < m) throw ConfigError("fit_subset_pca: n smaller than subset size");

    const EigenDecomposition eig = sym_eig_desc(centered.Kc_mm / m);
    const double threshold = cutoff.threshold(eig.values(0));

    SubsetPcaResult result;
    result.subset_eigs = eig.values;
    result.variances = Vector::Zero(m);
    result.recon_error_by_d = Vector::Zero(m + 1);
    result.recon_error_by_d(0) = total_variance;

    for (int j = 0; j < m; ++j) {
        double captured = 0.0;
        if (eig.values(j) > threshold) {
            // u_j^T K'_mn K'_nm u_j / (n m lam_j); cut components are skipped
            // since their direction is undefined.
            captured = (centered.Kc_nm * eig.vectors.col(j)).squaredNorm() /
                       (static_cast<double>(n) * m * eig.values(j));
        }
        result.variances(j) = captured;
        result.recon_error_by_d(j + 1) = result.recon_error_by_d(j) - captured;
    }
    return result;
}

} // namespace nystrompca
