#include "chiral_berry/algebra3.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <random>

using namespace chiral_berry;

namespace {

const ComplexVec3 X{1, 0, 0}, Y{0, 1, 0}, Z{0, 0, 1};
const Complex I{0, 1};

ComplexVec3 random_vec(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1, 1);
    return {{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
}

} // namespace

TEST(Algebra3, CrossProductExamples)
{
    EXPECT_EQ(cross(X, Y), Z);
    std::mt19937_64 rng(1);
    const auto a = random_vec(rng);
    EXPECT_LT(max_abs(cross(a, a)), 1e-15);
    const auto e = X + I * Y;
    EXPECT_LT(max_abs(cross(conj(e), e) - ComplexVec3{0, 0, 2.0 * I}), 1e-15);
}

TEST(Algebra3, DiamondAndOdot)
{
    EXPECT_EQ(diamond(X, Y), Z);
    EXPECT_EQ(diamond(X, X), ComplexVec3{});
    std::mt19937_64 rng(2);
    for (int k = 0; k < 20; ++k) {
        const auto a = random_vec(rng), b = random_vec(rng);
        EXPECT_LT(max_abs(diamond(a, b) - diamond(b, a)), 1e-15);
    }
    EXPECT_EQ(odot(X, X), X);
    EXPECT_EQ(odot(X, Y), ComplexVec3{});
    EXPECT_EQ(odot(ComplexVec3{1, 2, 3}, ComplexVec3{1, 1, 2}), (ComplexVec3{1, 2, 6}));
}

TEST(Algebra3, LeviCivitaMatchesPermutationParity)
{
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) EXPECT_EQ(levi_civita(i, j, k), oracle::levi(i, j, k));
}

TEST(Algebra3, SymmetrizedLemma)
{
    // Index tuples written 1-based in the usual notation: (1,2,1,2) and (1,1,2,3).
    EXPECT_EQ(symmetrized_levi_civita_lhs(0, 1, 0, 1), 1);
    EXPECT_EQ(symmetrized_levi_civita_rhs(0, 1, 0, 1), 1);
    EXPECT_EQ(symmetrized_levi_civita_lhs(0, 0, 1, 2), 0);
    EXPECT_EQ(symmetrized_levi_civita_rhs(0, 0, 1, 2), 0);
    int tuples = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l)
                for (int m = 0; m < 3; ++m) {
                    int lhs = 0;
                    for (int n = 0; n < 3; ++n) lhs += std::abs(oracle::levi(n, i, j)) * std::abs(oracle::levi(n, l, m));
                    EXPECT_EQ(symmetrized_levi_civita_lhs(i, j, l, m), lhs);
                    EXPECT_EQ(lhs, symmetrized_levi_civita_rhs(i, j, l, m));
                    ++tuples;
                }
    EXPECT_EQ(tuples, 81);
    EXPECT_TRUE(symmetrized_levi_civita_identity_check());
    EXPECT_TRUE(signed_levi_civita_identity_check());
}

TEST(Algebra3, AntisymmetricContraction)
{
    ComplexMatrix3 zero{};
    EXPECT_EQ(antisymmetric_contraction_residual(zero, zero), 0.0);
    ComplexMatrix3 t{}, k{};
    for (int i = 0; i < 3; ++i) {
        k[i][i] = 1.0;
        for (int j = 0; j < 3; ++j) t[i][j] = levi_civita(2, i, j);
    }
    EXPECT_LT(antisymmetric_contraction_residual(t, k), 1e-15);
    const auto check = contraction_identity_check(20240611, 100, 1e-12);
    EXPECT_TRUE(check.passed);
    EXPECT_EQ(check.trials, 100);
    EXPECT_LT(check.max_residual, 1e-12);
}

TEST(Algebra3, RotationsAreProper)
{
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    for (int k = 0; k < 10; ++k) {
        const auto r = rotation_matrix({n(rng), n(rng), n(rng)}, n(rng));
        EXPECT_NEAR(determinant(r), 1.0, 1e-14);
        const auto rtr = transpose(r) * r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) EXPECT_NEAR(rtr[i][j], i == j ? 1.0 : 0.0, 1e-14);
    }
    const auto quarter = rotation_matrix({0, 0, 1}, oracle::pi / 2);
    const Vec3 ex{1, 0, 0};
    const auto ey = quarter * ex;
    EXPECT_NEAR(ey[0], 0.0, 1e-15);
    EXPECT_NEAR(ey[1], 1.0, 1e-15);
}

TEST(Algebra3, HermitianEigenvaluesMatchEigen)
{
    std::mt19937_64 rng(4);
    for (int k = 0; k < 50; ++k) {
        ComplexMatrix3 a{};
        Eigen::Matrix3cd e;
        const auto v0 = random_vec(rng), v1 = random_vec(rng), v2 = random_vec(rng);
        const std::array<ComplexVec3, 3> rows{v0, v1, v2};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a[i][j] = rows[i][j] + std::conj(rows[j][i]);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) e(i, j) = a[i][j];
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(e);
        const auto ours = hermitian_eigenvalues(a);
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(ours[i], solver.eigenvalues()[i], 1e-12);
    }
}
