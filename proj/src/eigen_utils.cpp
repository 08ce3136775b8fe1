#include "nystrompca/eigen_utils.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "nystrompca/errors.hpp"

namespace nystrompca {

namespace {

void fix_column_signs(Matrix& vectors) {
    for (int j = 0; j < vectors.cols(); ++j) {
        int pivot = 0;
        double best = -1.0;
        for (int i = 0; i < vectors.rows(); ++i) {
            const double magnitude = std::abs(vectors(i, j));
            if (magnitude > best) {
                best = magnitude;
                pivot = i;
            }
        }
        if (vectors(pivot, j) < 0.0) vectors.col(j) = -vectors.col(j);
    }
}

// Shared spectral-filter core: y_j = f(lambda_j) over eigenvalues above the
// cutoff, assembled back as U_+ f(D_+) U_+^T.
template <typename F>
Matrix spectral_apply(const Matrix& M, double cutoff, F&& f, const char* who) {
    EigenDecomposition eig = sym_eig_desc(M);
    Matrix result = Matrix::Zero(M.rows(), M.cols());
    int kept = 0;
    for (int j = 0; j < eig.values.size(); ++j) {
        const double lambda = eig.values(j);
        if (lambda <= cutoff) continue; // negatives cut with everything below
        result.noalias() += f(lambda) * eig.vectors.col(j) * eig.vectors.col(j).transpose();
        ++kept;
    }
    if (kept == 0) {
        throw NumericalError(std::string(who) + ": all eigenvalues at or below the cutoff");
    }
    return result;
}

} // namespace

EigenDecomposition sym_eig_desc(const Matrix& M) {
    if (M.rows() != M.cols()) {
        throw ConfigError("sym_eig_desc: matrix is not square");
    }
    if (!M.allFinite()) {
        throw ConfigError("sym_eig_desc: matrix has non-finite entries");
    }
    const Matrix sym = 0.5 * (M + M.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("sym_eig_desc: eigendecomposition failed");
    }
    const auto k = static_cast<int>(M.rows());
    EigenDecomposition out;
    out.values.resize(k);
    out.vectors.resize(k, k);
    // Eigen returns ascending order.
    for (int j = 0; j < k; ++j) {
        out.values(j) = solver.eigenvalues()(k - 1 - j);
        out.vectors.col(j) = solver.eigenvectors().col(k - 1 - j);
    }
    fix_column_signs(out.vectors);
    return out;
}

Matrix psd_inv_sqrt(const Matrix& M, double cutoff) {
    return spectral_apply(M, cutoff, [](double lambda) { return 1.0 / std::sqrt(lambda); },
                          "psd_inv_sqrt");
}

Matrix psd_pseudo_inverse(const Matrix& M, double cutoff) {
    return spectral_apply(M, cutoff, [](double lambda) { return 1.0 / lambda; },
                          "psd_pseudo_inverse");
}

} // namespace nystrompca
