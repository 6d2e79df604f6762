#include "chiral_berry/algebra3.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace chiral_berry {

ComplexVec3& ComplexVec3::operator+=(const ComplexVec3& o)
{
    for (std::size_t i = 0; i < 3; ++i) {
        c[i] += o.c[i];
    }
    return *this;
}

ComplexVec3& ComplexVec3::operator-=(const ComplexVec3& o)
{
    for (std::size_t i = 0; i < 3; ++i) {
        c[i] -= o.c[i];
    }
    return *this;
}

ComplexVec3& ComplexVec3::operator*=(Complex s)
{
    for (auto& v : c) {
        v *= s;
    }
    return *this;
}

ComplexVec3 operator+(ComplexVec3 a, const ComplexVec3& b) { return a += b; }
ComplexVec3 operator-(ComplexVec3 a, const ComplexVec3& b) { return a -= b; }
ComplexVec3 operator-(const ComplexVec3& a) { return {-a[0], -a[1], -a[2]}; }
ComplexVec3 operator*(Complex s, ComplexVec3 v) { return v *= s; }
ComplexVec3 operator*(ComplexVec3 v, Complex s) { return v *= s; }
ComplexVec3 operator/(ComplexVec3 v, Complex s) { return v *= (1.0 / s); }

ComplexVec3 conj(const ComplexVec3& v) { return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}; }
ComplexVec3 real_part(const ComplexVec3& v) { return {v[0].real(), v[1].real(), v[2].real()}; }
ComplexVec3 imag_part(const ComplexVec3& v) { return {v[0].imag(), v[1].imag(), v[2].imag()}; }

Complex dot(const ComplexVec3& a, const ComplexVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Complex inner(const ComplexVec3& a, const ComplexVec3& b)
{
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

double norm2(const ComplexVec3& v) { return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]); }
double norm(const ComplexVec3& v) { return std::sqrt(norm2(v)); }

double max_abs(const ComplexVec3& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); }

double max_abs_imag(const ComplexVec3& v)
{
    return std::max({std::abs(v[0].imag()), std::abs(v[1].imag()), std::abs(v[2].imag())});
}

ComplexVec3 cross(const ComplexVec3& a, const ComplexVec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

ComplexVec3 diamond(const ComplexVec3& a, const ComplexVec3& b)
{
    return {a[1] * b[2] + a[2] * b[1], a[2] * b[0] + a[0] * b[2], a[0] * b[1] + a[1] * b[0]};
}

ComplexVec3 odot(const ComplexVec3& a, const ComplexVec3& b) { return {a[0] * b[0], a[1] * b[1], a[2] * b[2]}; }

Vec3 to_real(const ComplexVec3& v) { return {v[0].real(), v[1].real(), v[2].real()}; }

Matrix3 identity3() { return {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}; }

Matrix3 transpose(const Matrix3& m)
{
    Matrix3 t{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            t[i][j] = m[j][i];
        }
    }
    return t;
}

Matrix3 operator*(const Matrix3& a, const Matrix3& b)
{
    Matrix3 r{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t k = 0; k < 3; ++k) {
                r[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return r;
}

Vec3 operator*(const Matrix3& m, const Vec3& v)
{
    Vec3 r{};
    for (std::size_t i = 0; i < 3; ++i) {
        r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    }
    return r;
}

ComplexVec3 operator*(const Matrix3& m, const ComplexVec3& v)
{
    ComplexVec3 r;
    for (std::size_t i = 0; i < 3; ++i) {
        r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    }
    return r;
}

double determinant(const Matrix3& m)
{
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Matrix3 rotation_matrix(const Vec3& axis, double angle)
{
    const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    const double x = axis[0] / len, y = axis[1] / len, z = axis[2] / len;
    const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
    return {{{t * x * x + c, t * x * y - s * z, t * x * z + s * y},
             {t * x * y + s * z, t * y * y + c, t * y * z - s * x},
             {t * x * z - s * y, t * y * z + s * x, t * z * z + c}}};
}

ComplexMatrix3 adjoint(const ComplexMatrix3& m)
{
    ComplexMatrix3 r{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            r[i][j] = std::conj(m[j][i]);
        }
    }
    return r;
}

double max_abs_diff(const ComplexMatrix3& a, const ComplexMatrix3& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
        }
    }
    return worst;
}

double max_abs(const ComplexMatrix3& m) { return max_abs_diff(m, ComplexMatrix3{}); }

std::array<double, 3> hermitian_eigenvalues(const ComplexMatrix3& m)
{
    const double a00 = m[0][0].real(), a11 = m[1][1].real(), a22 = m[2][2].real();
    const double off = std::norm(m[0][1]) + std::norm(m[0][2]) + std::norm(m[1][2]);
    const double q = (a00 + a11 + a22) / 3.0;
    const double p2 = (a00 - q) * (a00 - q) + (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) + 2.0 * off;
    if (p2 == 0.0) {
        return {q, q, q};
    }
    const double p = std::sqrt(p2 / 6.0);
    ComplexMatrix3 b = m;
    for (std::size_t i = 0; i < 3; ++i) {
        b[i][i] -= q;
        for (std::size_t j = 0; j < 3; ++j) {
            b[i][j] /= p;
        }
    }
    const Complex det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
                      - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
                      + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    const double r = std::clamp(0.5 * det.real(), -1.0, 1.0);
    const double angle = std::acos(r) / 3.0;
    constexpr double two_pi_3 = 2.0943951023931954923;
    const double hi = q + 2.0 * p * std::cos(angle);
    const double lo = q + 2.0 * p * std::cos(angle + two_pi_3);
    return {lo, 3.0 * q - hi - lo, hi};
}

int symmetrized_levi_civita_lhs(int i, int j, int l, int m)
{
    int sum = 0;
    for (int n = 0; n < 3; ++n) {
        sum += std::abs(levi_civita(n, i, j)) * std::abs(levi_civita(n, l, m));
    }
    return sum;
}

int symmetrized_levi_civita_rhs(int i, int j, int l, int m)
{
    return (1 - kronecker(i, j)) * (kronecker(i, l) * kronecker(j, m) + kronecker(i, m) * kronecker(j, l));
}

bool symmetrized_levi_civita_identity_check()
{
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int l = 0; l < 3; ++l) {
                for (int m = 0; m < 3; ++m) {
                    if (symmetrized_levi_civita_lhs(i, j, l, m) != symmetrized_levi_civita_rhs(i, j, l, m)) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

bool signed_levi_civita_identity_check()
{
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int l = 0; l < 3; ++l) {
                for (int m = 0; m < 3; ++m) {
                    int lhs = 0;
                    for (int n = 0; n < 3; ++n) {
                        lhs += levi_civita(n, i, j) * levi_civita(n, l, m);
                    }
                    const int rhs = kronecker(i, l) * kronecker(j, m) - kronecker(i, m) * kronecker(j, l);
                    if (lhs != rhs) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

double antisymmetric_contraction_residual(const ComplexMatrix3& t, const ComplexMatrix3& k)
{
    Complex lhs{};
    Complex rhs{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            lhs += t[i][j] * k[i][j];
            for (int l = 0; l < 3; ++l) {
                for (int m = 0; m < 3; ++m) {
                    int w = 0;
                    for (int n = 0; n < 3; ++n) {
                        w += levi_civita(n, i, j) * levi_civita(n, l, m);
                    }
                    if (w != 0) {
                        rhs += 0.5 * w * t[i][j] * k[l][m];
                    }
                }
            }
        }
    }
    return std::abs(lhs - rhs);
}

IdentityCheck contraction_identity_check(std::uint64_t seed, int trials, double tolerance)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto draw = [&] { return Complex(unit(rng), unit(rng)); };

    IdentityCheck out;
    out.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        ComplexMatrix3 t{};
        ComplexMatrix3 k{};
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i + 1; j < 3; ++j) {
                t[i][j] = draw();
                t[j][i] = -t[i][j];
            }
            for (std::size_t j = 0; j < 3; ++j) {
                k[i][j] = draw();
            }
        }
        out.max_residual = std::max(out.max_residual, antisymmetric_contraction_residual(t, k));
    }
    out.passed = out.max_residual < tolerance;
    return out;
}

} // namespace chiral_berry
