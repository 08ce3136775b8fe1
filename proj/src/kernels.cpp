#include "nystrompca/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nystrompca/errors.hpp"
#include "parallel.hpp"

namespace nystrompca {

namespace {

// (base)^degree by repeated multiplication, exact for integer exponents.
double integer_power(double base, int degree) {
    double result = 1.0;
    for (int i = 0; i < degree; ++i) result *= base;
    return result;
}

double raw_kernel(const KernelSpec& spec, const Eigen::Ref<const Vector>& x,
                  const Eigen::Ref<const Vector>& y) {
    switch (spec.family) {
    case KernelFamily::RBF:
        return std::exp(-(x - y).squaredNorm() / (spec.sigma * spec.sigma));
    case KernelFamily::Polynomial:
        return integer_power(x.dot(y) + spec.offset, spec.degree);
    case KernelFamily::Cauchy:
        return 1.0 / (1.0 + (x - y).squaredNorm() / (spec.sigma * spec.sigma));
    }
    throw ConfigError("unknown kernel family");
}

double raw_self_kernel(const KernelSpec& spec, const Eigen::Ref<const Vector>& x) {
    switch (spec.family) {
    case KernelFamily::RBF:
    case KernelFamily::Cauchy:
        return 1.0;
    case KernelFamily::Polynomial:
        return integer_power(x.squaredNorm() + spec.offset, spec.degree);
    }
    throw ConfigError("unknown kernel family");
}

} // namespace

double KernelSpec::sup_bound() const {
    if (normalized) return 1.0;
    switch (family) {
    case KernelFamily::RBF:
    case KernelFamily::Cauchy:
        return 1.0;
    case KernelFamily::Polynomial:
        return std::numeric_limits<double>::infinity();
    }
    return std::numeric_limits<double>::infinity();
}

void KernelSpec::validate() const {
    if (family != KernelFamily::Polynomial && !(sigma > 0.0)) {
        throw ConfigError("kernel bandwidth sigma must be positive");
    }
    if (family == KernelFamily::Polynomial && degree < 1) {
        throw ConfigError("polynomial kernel degree must be at least 1");
    }
}

const char* kernel_family_name(KernelFamily family) {
    switch (family) {
    case KernelFamily::RBF: return "rbf";
    case KernelFamily::Polynomial: return "polynomial";
    case KernelFamily::Cauchy: return "cauchy";
    }
    return "unknown";
}

KernelFamily kernel_family_from_name(const std::string& name) {
    if (name == "rbf") return KernelFamily::RBF;
    if (name == "polynomial" || name == "poly") return KernelFamily::Polynomial;
    if (name == "cauchy") return KernelFamily::Cauchy;
    throw ConfigError("unknown kernel family '" + name + "'");
}

double eval_kernel(const KernelSpec& spec, const Eigen::Ref<const Vector>& x,
                   const Eigen::Ref<const Vector>& y) {
    if (x.size() != y.size()) {
        throw ConfigError("eval_kernel: vector lengths differ");
    }
    spec.validate();
    const double value = raw_kernel(spec, x, y);
    if (!spec.normalized) return value;
    const double kxx = raw_self_kernel(spec, x);
    const double kyy = raw_self_kernel(spec, y);
    if (!(kxx > 0.0) || !(kyy > 0.0)) {
        throw NumericalError("kernel normalization: degenerate input with k(x,x) <= 0");
    }
    return value / std::sqrt(kxx * kyy);
}

Matrix kernel_matrix(const KernelSpec& spec, const Matrix& X, const Matrix& Y) {
    if (X.cols() != Y.cols()) {
        throw ConfigError("kernel_matrix: column counts differ");
    }
    spec.validate();
    const auto rows = static_cast<int>(X.rows());
    const auto cols = static_cast<int>(Y.rows());
    Matrix K(rows, cols);
    auto fill_row = [&](int i) {
        for (int j = 0; j < cols; ++j) {
            K(i, j) = eval_kernel(spec, X.row(i).transpose(), Y.row(j).transpose());
        }
    };
    // Row-parallel only when the matrix is large; each entry is produced by
    // the identical expression, so the result matches the sequential order.
    if (static_cast<long>(rows) * cols >= 200000) {
        detail::parallel_for(rows, fill_row);
    } else {
        for (int i = 0; i < rows; ++i) fill_row(i);
    }
    return K;
}

Vector kernel_vector(const KernelSpec& spec, const Matrix& X,
                     const Eigen::Ref<const Vector>& x) {
    Vector kappa(X.rows());
    for (int i = 0; i < X.rows(); ++i) {
        kappa(i) = eval_kernel(spec, X.row(i).transpose(), x);
    }
    return kappa;
}

Vector kernel_diagonal(const KernelSpec& spec, const Matrix& X) {
    Vector diag(X.rows());
    for (int i = 0; i < X.rows(); ++i) {
        diag(i) = eval_kernel(spec, X.row(i).transpose(), X.row(i).transpose());
    }
    return diag;
}

double median_bandwidth(const Matrix& X_subset) {
    const auto m = static_cast<int>(X_subset.rows());
    if (m < 2) {
        throw ConfigError("median_bandwidth: need at least two rows");
    }
    std::vector<double> distances;
    distances.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            distances.push_back((X_subset.row(i) - X_subset.row(j)).norm());
        }
    }
    std::sort(distances.begin(), distances.end());
    const std::size_t count = distances.size();
    double median = 0.0;
    if (count % 2 == 1) {
        median = distances[count / 2];
    } else {
        median = 0.5 * (distances[count / 2 - 1] + distances[count / 2]);
    }
    if (!(median > 0.0)) {
        throw NumericalError("median_bandwidth: median pairwise distance is zero");
    }
    return median;
}

} // namespace nystrompca
