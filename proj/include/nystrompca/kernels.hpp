#pragma once

#include <Eigen/Core>

namespace nystrompca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class KernelFamily { RBF, Polynomial, Cauchy };

// Kernel function with its parameters. Data matrices pass observations along
// the rows throughout the library.
//
//   RBF         k(x,y) = exp(-|x-y|^2 / sigma^2)
//   Polynomial  k(x,y) = (<x,y> + offset)^degree
//   Cauchy      k(x,y) = 1 / (1 + |x-y|^2 / sigma^2)
//
// With normalized = true every evaluation is rescaled to
// k'(x,y) = k(x,y) / sqrt(k(x,x) k(y,y)), which makes the diagonal 1 and
// gives an unbounded kernel a finite sup bound.
struct KernelSpec {
    KernelFamily family = KernelFamily::RBF;
    double sigma = 1.0;      // RBF / Cauchy bandwidth
    double offset = 0.0;     // polynomial additive constant
    int degree = 2;          // polynomial exponent
    bool normalized = false;

    // B = sup_x k(x,x): 1 for RBF, Cauchy and any normalized kernel,
    // +infinity for the raw polynomial kernel.
    double sup_bound() const;

    void validate() const; // sigma > 0, degree >= 1
};

const char* kernel_family_name(KernelFamily family);
KernelFamily kernel_family_from_name(const std::string& name);

double eval_kernel(const KernelSpec& spec, const Eigen::Ref<const Vector>& x,
                   const Eigen::Ref<const Vector>& y);

// Cross-kernel matrix: entry (i,j) = k(X_i, Y_j). Parallelized over rows for
// large outputs; every entry is computed by the same expression as the
// sequential order, so results are bit-identical.
Matrix kernel_matrix(const KernelSpec& spec, const Matrix& X, const Matrix& Y);

// kappa(x) over the rows of X.
Vector kernel_vector(const KernelSpec& spec, const Matrix& X,
                     const Eigen::Ref<const Vector>& x);

// k(x_i, x_i) for each row.
Vector kernel_diagonal(const KernelSpec& spec, const Matrix& X);

// Median of the m(m-1)/2 pairwise Euclidean distances (not squared); an even
// count averages the two central order statistics. Throws NumericalError when
// the median is not positive (e.g. all points coincide).
double median_bandwidth(const Matrix& X_subset);

} // namespace nystrompca
