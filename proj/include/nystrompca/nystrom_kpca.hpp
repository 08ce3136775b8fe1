#pragma once

#include <span>
#include <vector>

#include "nystrompca/eigen_utils.hpp"

namespace nystrompca {

// Feature-space centring of the Nystrom blocks, computed without ever
// materializing an n x n matrix:
//
//   K'_nm = K_nm - 1_n K_nm - Kt 1_n^{n,m} + 1_n Kt 1_n^{n,m}
//   K'_mm = K_mm - 1_n^{m,n} K_nm - K_mn 1_n^{n,m} + 1_n^{m,n} Kt 1_n^{n,m}
//
// with Kt = K_nm K_mm^{-1} K_mn and every 1 matrix holding entries 1/n.
// All Kt terms collapse to rank-one corrections built from the column means
// of K_nm, so the cost is O(nm^2).
struct CenteredNystromMatrices {
    Matrix Kc_nm; // n x m, columns sum to zero
    Matrix Kc_mm; // m x m, symmetric
};

// Requires the first m rows of K_nm to equal K_mm (subset-first ordering).
// K_mm is inverted through the cutoff-regularized pseudo-inverse.
CenteredNystromMatrices center_nystrom_matrices(const Matrix& K_nm, const Matrix& K_mm,
                                                double cutoff = 1e-12);

enum class VarianceMode { Exact, Approximate };

// (1/n) sum_i k(x_i,x_i) minus the mean kernel value; Exact streams the full
// n^2 pair sum in O(1) extra memory, Approximate substitutes the mean of K_nm.
double total_variance(const KernelSpec& spec, const Matrix& X,
                      std::span<const int> subset, VarianceMode mode);

struct NystromPcaModel {
    KernelSpec spec;
    std::vector<int> subset_indices; // positions in the original data
    Matrix subset_rows;              // m x p, needed to form kappa_m(x*)
    Vector lambdas;                  // m explained variances, descending
    Matrix U;                        // m x m component coefficients, U = K'_mm^{-1/2} V
    Matrix scores;                   // n x m principal scores W, rows in original data order
    Vector phi0_coeffs;              // coefficients of the projected mean on {k(x_k, .)}
    Vector newpoint_a;               // K_mn 1_n
    double newpoint_mu = 0.0;        // 1_n^{m,n} Kt 1_n (constant entry)
    double total_variance = 0.0;     // (1/n) Tr(K'), exact or approximate
    VarianceMode variance_mode = VarianceMode::Exact;
    int n = 0;
    int retained = 0;                // lambdas above the cutoff
    double cutoff_threshold = 0.0;
    bool degenerate = false;         // centred subset block vanished

    int m() const { return static_cast<int>(subset_rows.rows()); }
};

// Eigenpairs of Kt' = (1/n) K'_mm^{-1/2} K'_mn K'_nm K'_mm^{-1/2}, scores
// W = K'_nm U. O(nm^2) time, O(nm) memory (plus the
// streamed pair sum when variance_mode is Exact). The score sign convention
// flips column j of W and U together whenever max(W_j) + min(W_j) < 0.
NystromPcaModel fit_nystrom_kpca(const KernelSpec& spec, const Matrix& X,
                                 std::span<const int> subset_indices,
                                 VarianceMode variance_mode = VarianceMode::Exact,
                                 const CutoffPolicy& cutoff = {});

// kappa~(x*) = kappa_m(x*) - a - (phi0 . kappa_m(x*)) 1_m + mu 1_m; stacking
// this over the training rows reproduces K'_nm.
Vector nystrom_centered_kernel_vector(const NystromPcaModel& model,
                                      const Eigen::Ref<const Vector>& x_star);

// U^T kappa~(x*), O(m^2) per query.
Vector nystrom_scores_new(const NystromPcaModel& model,
                          const Eigen::Ref<const Vector>& x_star);

// total_variance - sum of the first d lambdas; tiny negative round-off is
// clamped to zero, anything below -1e-10 raises NumericalError.
double nystrom_reconstruction_error(const NystromPcaModel& model, int d);

// Classic Nystrom eigenpair approximation of the uncentred kernel matrix:
// values (n/m) lam_j, vectors sqrt(m/n) (1/lam_j) K_nm u_j with (lam_j, u_j)
// the eigenpairs of K_mm. Baseline utility only; this is not the PCA above.
struct ClassicNystromEigs {
    Vector values;  // length m
    Matrix vectors; // n x m, zero columns beyond the numerical rank
    int rank = 0;   // eigenvalues of K_mm above the cutoff
};

// `num_components` = -1 keeps every component above the cutoff and zero-pads
// the rest; requesting more components than the rank throws NumericalError.
ClassicNystromEigs classic_nystrom_eigs(const Matrix& K_nm, const Matrix& K_mm,
                                        double cutoff = 1e-12, int num_components = -1);

} // namespace nystrompca
