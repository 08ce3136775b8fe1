#pragma once

#include "nystrompca/kernels.hpp"

namespace nystrompca {

// Finite-sample confidence bound on the gap between the Nystrom and full
// empirical reconstruction errors, in the uncentred (zero-mean feature space)
// setting. Consumes the eigenvalues of (1/m) K_mm from the subset alone.
struct BoundResult {
    double delta = 0.0;
    double D = 0.0;
    Vector D_j;          // length d, each in [0, 1]
    double bound = 0.0;

    struct Inputs {
        double B = 0.0;
        int m = 0;
        int n = 0;
        int d = 0;
        double confidence = 0.0;
    } inputs;
};

// delta = ln(2 / (1 - confidence)), so that 1 - 2 e^{-delta} = confidence.
double delta_from_confidence(double confidence);

// D   = ((n-m)/n) 2B sqrt(delta) / sqrt(n-m)
// D_j = min( (2D)^2 / gap_j^2 , 1 ) with gap_j = min(lam_{j-1}-lam_j,
//       lam_j-lam_{j+1}), sentinels lam_0 = +inf, lam_{m+1} = -inf
// bound = sum_{j<=d} lam_j D_j + D max_{k<=d} D_k
//
// subset_eigs must be the descending eigenvalues of the UNCENTRED (1/m) K_mm.
BoundResult confidence_bound(const Vector& subset_eigs, int m, int n, double B,
                             double delta, int d);

// Deviation bound 2 B sqrt(delta) / sqrt(n) for an empirical covariance
// operator around its mean, holding with probability at least 1 - 2e^{-delta}.
double covariance_deviation_bound(double B, int n, double delta);

} // namespace nystrompca
