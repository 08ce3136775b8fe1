#pragma once

#include "nystrompca/kernels.hpp"

namespace nystrompca {

// Eigenvalues descending, vectors[:,j] paired with values[j], orthonormal
// columns. Column signs are fixed so the largest-magnitude entry of each
// vector is positive (first such entry on ties).
struct EigenDecomposition {
    Vector values;
    Matrix vectors;
};

// Full symmetric eigendecomposition; the input is symmetrized as (M+M^T)/2
// before factorization. Throws ConfigError on non-square or non-finite input.
EigenDecomposition sym_eig_desc(const Matrix& M);

// Threshold below which eigenvalues are treated as exactly zero.
// Relative mode scales `value` by the largest eigenvalue; Absolute mode uses
// `value` directly (strict parity with a fixed 1e-12 cut).
struct CutoffPolicy {
    enum class Mode { Absolute, Relative };
    Mode mode = Mode::Relative;
    double value = 1e-12;

    double threshold(double max_eigenvalue) const {
        return mode == Mode::Absolute ? value : value * std::abs(max_eigenvalue);
    }

    static CutoffPolicy absolute(double value = 1e-12) { return {Mode::Absolute, value}; }
    static CutoffPolicy relative(double value = 1e-12) { return {Mode::Relative, value}; }
};

// Pseudo inverse square root U+ D+^{-1/2} U+^T over the eigenvalues strictly
// above `cutoff`; everything at or below the cutoff (negatives included) is
// treated as exactly zero and excluded. Throws NumericalError if nothing
// survives the cut.
Matrix psd_inv_sqrt(const Matrix& M, double cutoff = 1e-12);

// Pseudo inverse over the same retained spectrum (psd_inv_sqrt squared).
Matrix psd_pseudo_inverse(const Matrix& M, double cutoff = 1e-12);

} // namespace nystrompca
