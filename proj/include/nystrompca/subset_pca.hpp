#pragma once

#include "nystrompca/nystrom_kpca.hpp"

namespace nystrompca {

// PCA fitted on the m-point subset alone and evaluated on all n points.
// Comparison baseline for the Nystrom method.
struct SubsetPcaResult {
    Vector variances;        // variance of the full data along each subset component
    Vector subset_eigs;      // eigenvalues of (1/m) K'_mm, descending
    Vector recon_error_by_d; // length m+1, entry d = reconstruction error with d components
};

// variances[j] = u_j^T K'_mn K'_nm u_j / (n m subset_eigs[j]) over components
// with subset_eigs above the cutoff; cut components contribute zero.
SubsetPcaResult fit_subset_pca(const CenteredNystromMatrices& centered, int n,
                               double total_variance, const CutoffPolicy& cutoff = {});

} // namespace nystrompca
