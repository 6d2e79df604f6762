#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>

namespace chiral_berry {

using Complex = std::complex<double>;

/// Real Cartesian 3-vector (photoelectron directions, rotation axes).
using Vec3 = std::array<double, 3>;

/// Dense real 3x3 matrix, row-major: m[row][col].
using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Dense complex 3x3 matrix, row-major: m[row][col].
using ComplexMatrix3 = std::array<std::array<Complex, 3>, 3>;

/// Three complex Cartesian components. Index 0,1,2 map to x,y,z.
struct ComplexVec3 {
    std::array<Complex, 3> c{};

    constexpr ComplexVec3() = default;
    constexpr ComplexVec3(Complex x, Complex y, Complex z) : c{x, y, z} {}
    explicit ComplexVec3(const Vec3& v) : c{v[0], v[1], v[2]} {}

    constexpr Complex& operator[](std::size_t i) { return c[i]; }
    constexpr const Complex& operator[](std::size_t i) const { return c[i]; }

    Complex x() const { return c[0]; }
    Complex y() const { return c[1]; }
    Complex z() const { return c[2]; }

    ComplexVec3& operator+=(const ComplexVec3& o);
    ComplexVec3& operator-=(const ComplexVec3& o);
    ComplexVec3& operator*=(Complex s);

    friend bool operator==(const ComplexVec3&, const ComplexVec3&) = default;
};

ComplexVec3 operator+(ComplexVec3 a, const ComplexVec3& b);
ComplexVec3 operator-(ComplexVec3 a, const ComplexVec3& b);
ComplexVec3 operator-(const ComplexVec3& a);
ComplexVec3 operator*(Complex s, ComplexVec3 v);
ComplexVec3 operator*(ComplexVec3 v, Complex s);
ComplexVec3 operator/(ComplexVec3 v, Complex s);

ComplexVec3 conj(const ComplexVec3& v);
ComplexVec3 real_part(const ComplexVec3& v);
ComplexVec3 imag_part(const ComplexVec3& v);

/// Bilinear sum a_i b_i (no conjugation).
Complex dot(const ComplexVec3& a, const ComplexVec3& b);
/// Hermitian inner product a_i* b_i.
Complex inner(const ComplexVec3& a, const ComplexVec3& b);
double norm2(const ComplexVec3& v);
double norm(const ComplexVec3& v);
/// Largest absolute component; used as the residual norm in checks.
double max_abs(const ComplexVec3& v);
/// Largest |Im v_i|.
double max_abs_imag(const ComplexVec3& v);

/// (a x b)_l = eps_lij a_i b_j.
ComplexVec3 cross(const ComplexVec3& a, const ComplexVec3& b);
/// (a <> b)_i = |eps_ilm| a_l b_m, the symmetric off-diagonal product.
ComplexVec3 diamond(const ComplexVec3& a, const ComplexVec3& b);
/// Componentwise product, (a . b)_i = a_i b_i.
ComplexVec3 odot(const ComplexVec3& a, const ComplexVec3& b);

Vec3 to_real(const ComplexVec3& v);

// Matrices.
Matrix3 identity3();
Matrix3 transpose(const Matrix3& m);
Matrix3 operator*(const Matrix3& a, const Matrix3& b);
Vec3 operator*(const Matrix3& m, const Vec3& v);
ComplexVec3 operator*(const Matrix3& m, const ComplexVec3& v);
double determinant(const Matrix3& m);
/// Rodrigues rotation about a (not necessarily unit) axis.
Matrix3 rotation_matrix(const Vec3& axis, double angle);

ComplexMatrix3 adjoint(const ComplexMatrix3& m);
/// Frobenius-norm-free residual: max_ij |a_ij - b_ij|.
double max_abs_diff(const ComplexMatrix3& a, const ComplexMatrix3& b);
double max_abs(const ComplexMatrix3& m);
/// Eigenvalues of a Hermitian matrix, ascending (trigonometric closed form).
std::array<double, 3> hermitian_eigenvalues(const ComplexMatrix3& m);

/// Levi-Civita symbol on 0-based indices; eps(0,1,2) = +1.
constexpr int levi_civita(int i, int j, int k)
{
    if (i == j || j == k || i == k) {
        return 0;
    }
    // Even permutations of (0,1,2) are cyclic shifts.
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

constexpr int kronecker(int i, int j) { return i == j ? 1 : 0; }

/// sum_n |eps_nij| |eps_nlm|
int symmetrized_levi_civita_lhs(int i, int j, int l, int m);
/// (1 - d_ij)(d_il d_jm + d_im d_jl)
int symmetrized_levi_civita_rhs(int i, int j, int l, int m);

/// Exhaustive check of sum_n |eps_nij||eps_nlm| = (1-d_ij)(d_il d_jm + d_im d_jl)
/// over all 81 index tuples.
bool symmetrized_levi_civita_identity_check();

/// Exhaustive check of sum_n eps_nij eps_nlm = d_il d_jm - d_im d_jl.
bool signed_levi_civita_identity_check();

/// Outcome of a randomized identity sweep.
struct IdentityCheck {
    bool passed = false;
    double max_residual = 0.0;
    int trials = 0;
};

/// |T_ij K_ij - 1/2 eps_nij eps_nlm T_ij K_lm| for one (T, K) pair.
/// Meaningful only for antisymmetric T.
double antisymmetric_contraction_residual(const ComplexMatrix3& t, const ComplexMatrix3& k);

/// Random sweep of the antisymmetric-contraction identity with seeded
/// complex antisymmetric T and arbitrary K.
IdentityCheck contraction_identity_check(std::uint64_t seed = 20240611, int trials = 100,
                                         double tolerance = 1e-12);

} // namespace chiral_berry
