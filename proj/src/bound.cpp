#include "nystrompca/bound.hpp"

#include <cmath>
#include <limits>

#include "nystrompca/errors.hpp"

namespace nystrompca {

double delta_from_confidence(double confidence) {
    if (!(confidence > 0.0) || !(confidence < 1.0)) {
        throw ConfigError("confidence level must lie strictly between 0 and 1");
    }
    return std::log(2.0 / (1.0 - confidence));
}

double covariance_deviation_bound(double B, int n, double delta) {
    if (n < 1) throw ConfigError("covariance_deviation_bound: n must be positive");
    return 2.0 * B * std::sqrt(delta) / std::sqrt(static_cast<double>(n));
}

BoundResult confidence_bound(const Vector& subset_eigs, int m, int n, double B,
                             double delta, int d) {
    if (!std::isfinite(B) || !(B > 0.0)) {
        throw ConfigError("confidence_bound: kernel sup bound B must be finite and positive"
                          " (normalize unbounded kernels first)");
    }
    if (subset_eigs.size() != m) {
        throw ConfigError("confidence_bound: eigenvalue count differs from m");
    }
    if (d < 1 || d > m || m > n) {
        throw ConfigError("confidence_bound: need 1 <= d <= m <= n");
    }
    for (int j = 0; j + 1 < m; ++j) {
        if (subset_eigs(j) < subset_eigs(j + 1)) {
            throw ConfigError("confidence_bound: eigenvalues must be sorted descending");
        }
    }

    BoundResult result;
    result.delta = delta;
    result.inputs = {B, m, n, d, 1.0 - 2.0 * std::exp(-delta)};
    result.D = n == m ? 0.0
                      : (static_cast<double>(n - m) / n) * 2.0 * B * std::sqrt(delta) /
                            std::sqrt(static_cast<double>(n - m));

    const double inf = std::numeric_limits<double>::infinity();
    result.D_j.resize(d);
    double max_dj = 0.0;
    double sum = 0.0;
    for (int j = 0; j < d; ++j) {
        const double above = j == 0 ? inf : subset_eigs(j - 1) - subset_eigs(j);
        const double below = j == m - 1 ? inf : subset_eigs(j) - subset_eigs(j + 1);
        const double gap = std::min(above, below);
        double dj = 0.0;
        if (result.D > 0.0) {
            dj = gap > 0.0 ? std::min((2.0 * result.D / gap) * (2.0 * result.D / gap), 1.0) : 1.0;
        }
        result.D_j(j) = dj;
        max_dj = std::max(max_dj, dj);
        sum += subset_eigs(j) * dj;
    }
    result.bound = sum + result.D * max_dj;
    return result;
}

} // namespace nystrompca
