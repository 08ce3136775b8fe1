#pragma once

#include <memory>

#include "nystrompca/kpca_full.hpp"
#include "nystrompca/nystrom_kpca.hpp"

namespace nystrompca {

enum class RegressionKind { KPCR, NystromKPCR, NystromKRR };

// Regression on principal scores (PCR variants) or on the subset kernel
// expansion (KRR). The intercept is always the training target mean; the
// score columns are centred so no further demeaning is needed.
struct RegressionModel {
    RegressionKind kind = RegressionKind::KPCR;
    double intercept = 0.0;
    Vector coeffs;      // length d for the PCR variants, length m for KRR
    int d = 0;          // retained dimension (PCR variants)
    double gamma = 0.0; // ridge parameter (KRR)

    std::shared_ptr<const FullKpcaModel> full;       // KPCR
    std::shared_ptr<const NystromPcaModel> nystrom;  // Nystrom KPCR
    KernelSpec spec;                                 // KRR
    Matrix subset_rows;                              // KRR, m x p
};

// beta = Lambda_d^{-1/2} Q_d^T y'.
RegressionModel fit_kpcr(std::shared_ptr<const FullKpcaModel> model, const Vector& y, int d);

// beta = Lambda~_d^{-1} U_d^T K'_mn y' (= Lambda~_d^{-1} W_d^T y').
RegressionModel fit_nystrom_kpcr(std::shared_ptr<const NystromPcaModel> model,
                                 const Vector& y, int d);

// beta = (K_mn K_nm + gamma K_mm)^{-1} K_mn y', prediction ybar + beta^T kappa_m(x*).
RegressionModel fit_nystrom_krr(const KernelSpec& spec, const Matrix& X,
                                std::span<const int> subset_indices, const Vector& y,
                                double gamma, const CutoffPolicy& cutoff = {});

double predict(const RegressionModel& model, const Eigen::Ref<const Vector>& x_star);
Vector predict_all(const RegressionModel& model, const Matrix& X);

// 1 - SS_res / SS_tot with SS_tot about the mean of y_true.
double r_squared(const Vector& y_true, const Vector& y_pred);

} // namespace nystrompca
