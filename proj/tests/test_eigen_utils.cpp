#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nystrompca/eigen_utils.hpp"
#include "nystrompca/errors.hpp"
#include "test_support.hpp"

using namespace nystrompca;
using testing::random_psd;
using testing::random_symmetric;

TEST_CASE("identity spectrum") {
    const auto eig = sym_eig_desc(Matrix::Identity(3, 3));
    CHECK((eig.values.array() - 1.0).abs().maxCoeff() <= 1e-14);
}

TEST_CASE("diagonal matrix spectrum and vectors") {
    Matrix M = Matrix::Zero(2, 2);
    M(0, 0) = 2.0;
    M(1, 1) = -1.0;
    const auto eig = sym_eig_desc(M);
    CHECK(eig.values(0) == doctest::Approx(2.0));
    CHECK(eig.values(1) == doctest::Approx(-1.0));
    CHECK(std::abs(eig.vectors(0, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(eig.vectors(1, 1)) == doctest::Approx(1.0));
    // Sign rule: largest-magnitude entry positive.
    CHECK(eig.vectors(0, 0) > 0.0);
    CHECK(eig.vectors(1, 1) > 0.0);
}

TEST_CASE("reconstruction, orthonormality, residual") {
    const Matrix M = random_symmetric(5, 21);
    const auto eig = sym_eig_desc(M);
    const Matrix recon =
        eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
    CHECK((recon - M).norm() <= 1e-8);
    const Matrix gram = eig.vectors.transpose() * eig.vectors;
    CHECK((gram - Matrix::Identity(5, 5)).norm() <= 1e-8);
    const double scale = M.norm();
    for (int j = 0; j < 5; ++j) {
        CHECK((M * eig.vectors.col(j) - eig.values(j) * eig.vectors.col(j)).norm() <=
              1e-8 * scale);
    }
    for (int j = 0; j + 1 < 5; ++j) CHECK(eig.values(j) >= eig.values(j + 1));
}

TEST_CASE("deterministic output") {
    const Matrix M = random_symmetric(6, 5);
    const auto a = sym_eig_desc(M);
    const auto b = sym_eig_desc(M);
    CHECK((a.vectors - b.vectors).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rejects bad input") {
    CHECK_THROWS_AS(sym_eig_desc(Matrix::Zero(2, 3)), ConfigError);
    Matrix M = Matrix::Zero(2, 2);
    M(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(sym_eig_desc(M), ConfigError);
}

TEST_CASE("psd_inv_sqrt of identity") {
    const Matrix M = psd_inv_sqrt(Matrix::Identity(4, 4));
    CHECK((M - Matrix::Identity(4, 4)).norm() <= 1e-14);
}

TEST_CASE("psd_inv_sqrt cuts tiny modes") {
    Matrix M = Matrix::Zero(2, 2);
    M(0, 0) = 4.0;
    M(1, 1) = 1e-15;
    const Matrix R = psd_inv_sqrt(M, 1e-12);
    CHECK(R(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(R(1, 1) == doctest::Approx(0.0));
    CHECK(R(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("psd_inv_sqrt squared times M is the retained projector") {
    const Matrix M = random_psd(6, 31);
    const Matrix R = psd_inv_sqrt(M, 1e-12);
    // R^2 M should reproduce the projection onto the retained eigenspace.
    const auto eig = sym_eig_desc(M);
    Matrix projector = Matrix::Zero(6, 6);
    for (int j = 0; j < 6; ++j) {
        if (eig.values(j) > 1e-12) {
            projector += eig.vectors.col(j) * eig.vectors.col(j).transpose();
        }
    }
    CHECK((R * R * M - projector).norm() <= 1e-6);
    CHECK((R - R.transpose()).norm() <= 1e-12);
    CHECK(sym_eig_desc(R).values.minCoeff() >= -1e-12);
}

TEST_CASE("well conditioned inverse square root sandwiches to identity") {
    Matrix M = random_psd(5, 77);
    M += Matrix::Identity(5, 5); // min eigenvalue well above the cutoff
    const Matrix R = psd_inv_sqrt(M, 1e-12);
    CHECK((R * M * R - Matrix::Identity(5, 5)).norm() <= 1e-6);
}

TEST_CASE("rank zero input is an error") {
    CHECK_THROWS_AS(psd_inv_sqrt(Matrix::Zero(3, 3), 1e-12), NumericalError);
    CHECK_THROWS_AS(psd_pseudo_inverse(Matrix::Zero(3, 3), 1e-12), NumericalError);
}

TEST_CASE("pseudo inverse inverts the retained spectrum") {
    Matrix M = random_psd(5, 13);
    M += 0.5 * Matrix::Identity(5, 5);
    const Matrix P = psd_pseudo_inverse(M, 1e-12);
    CHECK((P * M - Matrix::Identity(5, 5)).norm() <= 1e-8);
}

TEST_CASE("cutoff policy thresholds") {
    CHECK(CutoffPolicy::absolute(1e-10).threshold(123.0) == 1e-10);
    CHECK(CutoffPolicy::relative(1e-12).threshold(100.0) == doctest::Approx(1e-10));
}
