#pragma once

// Reference implementations used only by the tests. Nothing here calls into
// the library's numerics, so agreement is a genuine cross-check.

#include "chiral_berry/algebra3.hpp"
#include "chiral_berry/molecule.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using V = std::array<C, 3>;
using R = std::array<double, 3>;
using M = std::array<std::array<C, 3>, 3>;

inline constexpr double pi = 3.14159265358979323846;
inline const C I{0.0, 1.0};

/// Sign of the permutation (i, j, k) of (0, 1, 2), counted by inversions.
inline int levi(int i, int j, int k)
{
    if (i == j || j == k || i == k) return 0;
    int inv = (i > j) + (i > k) + (j > k);
    return inv % 2 == 0 ? 1 : -1;
}

inline R r_hat(double t, double p) { return {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)}; }
inline R theta_hat(double t, double p) { return {std::cos(t) * std::cos(p), std::cos(t) * std::sin(p), -std::sin(t)}; }
inline R phi_hat(double, double p) { return {-std::sin(p), std::cos(p), 0.0}; }

inline V e_hat(double t, double p, int s)
{
    const auto a = theta_hat(t, p), b = phi_hat(t, p);
    V out;
    for (int i = 0; i < 3; ++i) out[i] = (a[i] + I * double(s) * b[i]) / std::sqrt(2.0);
    return out;
}

/// Derivatives of e by central differences of the closed-form vector with a
/// Richardson step pair, accurate to ~1e-12.
inline std::array<V, 2> e_hat_derivatives(double t, double p, int s)
{
    auto diff = [&](int which, double h) {
        V plus = which == 0 ? e_hat(t + h, p, s) : e_hat(t, p + h, s);
        V minus = which == 0 ? e_hat(t - h, p, s) : e_hat(t, p - h, s);
        V d;
        for (int i = 0; i < 3; ++i) d[i] = (plus[i] - minus[i]) / (2 * h);
        return d;
    };
    std::array<V, 2> out;
    for (int w = 0; w < 2; ++w) {
        const V coarse = diff(w, 2e-3), fine = diff(w, 1e-3);
        for (int i = 0; i < 3; ++i) out[w][i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    }
    return out;
}

/// d e / d theta and d e / d phi from the frame identities
/// d theta_hat / d theta = -r_hat, d theta_hat / d phi = cos(theta) phi_hat,
/// d phi_hat / d phi = -sin(theta) r_hat - cos(theta) theta_hat.
inline std::array<V, 2> e_hat_derivatives_exact(double t, double p, int s)
{
    const auto r = r_hat(t, p), th = theta_hat(t, p), ph = phi_hat(t, p);
    std::array<V, 2> out;
    for (int i = 0; i < 3; ++i) {
        out[0][i] = -r[i] / std::sqrt(2.0);
        out[1][i] = (std::cos(t) * ph[i] + I * double(s) * (-std::sin(t) * r[i] - std::cos(t) * th[i])) / std::sqrt(2.0);
    }
    return out;
}

inline double max_abs(const V& a, const V& b)
{
    double m = 0;
    for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline V to_v(const chiral_berry::ComplexVec3& v) { return {v[0], v[1], v[2]}; }

/// xi_l = Re sum eps_lij u*_i v_j, zeta_l = i Im sum |eps_lij| u*_i v_j,
/// chi_l = 2i Im u*_l v_l, with u = d_theta e, v = d_phi e.
inline std::array<V, 3> forms(const V& u, const V& v)
{
    std::array<V, 3> f{};
    for (int l = 0; l < 3; ++l) {
        C anti = 0, sym = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                anti += double(levi(l, i, j)) * std::conj(u[i]) * v[j];
                sym += double(std::abs(levi(l, i, j))) * std::conj(u[i]) * v[j];
            }
        f[0][l] = anti.real();
        f[1][l] = I * sym.imag();
        f[2][l] = 2.0 * I * (std::conj(u[l]) * v[l]).imag();
    }
    return f;
}

/// i Q_ij (u*_i v_j - v*_i u_j).
inline C wedge_density(const M& q, const V& u, const V& v)
{
    C s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += q[i][j] * (std::conj(u[i]) * v[j] - std::conj(v[i]) * u[j]);
    return I * s;
}

/// Gauss-Legendre on [-1, 1] by Newton iteration on P_n.
struct GL {
    std::vector<double> x, w;
};

inline GL gauss_legendre(int n)
{
    GL g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
        }
        g.x[i] = x;
        g.w[i] = 2.0 / ((1 - x * x) * dp * dp);
    }
    return g;
}

/// Orthonormal Y_lm with Condon-Shortley phase via the upward recurrence.
inline C ylm(int l, int m, double t, double p)
{
    const int am = std::abs(m);
    if (am > l) return 0.0;
    const double x = std::cos(t), sx = std::sin(t);
    double pmm = 1.0;
    for (int k = 1; k <= am; ++k) pmm *= -(2 * k - 1) * sx;
    double plm = pmm;
    if (l > am) {
        double prev = pmm, cur = x * (2 * am + 1) * pmm;
        for (int ll = am + 2; ll <= l; ++ll) {
            const double next = ((2 * ll - 1) * x * cur - (ll + am - 1) * prev) / (ll - am);
            prev = cur;
            cur = next;
        }
        plm = cur;
    }
    const double norm =
        std::sqrt((2 * l + 1) / (4 * pi) * std::exp(std::lgamma(l - am + 1.0) - std::lgamma(l + am + 1.0)));
    const C y = norm * plm * std::exp(I * double(am) * p);
    if (m >= 0) return y;
    return (am % 2 ? -1.0 : 1.0) * std::conj(y);
}

inline V dipole(const chiral_berry::HarmonicDipoleModel& model, double t, double p)
{
    const auto& c = model.coefficients;
    V d{};
    for (int l = 0; l <= c.l_max(); ++l)
        for (int m = -l; m <= l; ++m) {
            const C y = ylm(l, m, t, p);
            for (int j = 0; j < 3; ++j) d[j] += c.at(j, l, m) * y;
        }
    return d;
}

/// Integral over the sphere with an independent Gauss-Legendre x trapezoid grid.
template <typename F>
auto sphere_integral(F f, int n_theta, int n_phi)
{
    const auto g = gauss_legendre(n_theta);
    decltype(f(0.0, 0.0)) acc{};
    for (int i = 0; i < n_theta; ++i) {
        const double t = std::acos(g.x[i]);
        for (int j = 0; j < n_phi; ++j) {
            const double p = 2 * pi * j / n_phi;
            acc += f(t, p) * (g.w[i] * 2 * pi / n_phi);
        }
    }
    return acc;
}

/// Q_ij = |E|^2 sum_lm c*_ilm c_jlm.
inline M coefficient_gram(const chiral_berry::HarmonicDipoleModel& model)
{
    const auto& c = model.coefficients;
    const double e2 = std::norm(model.spectral_amplitude);
    M q{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l <= c.l_max(); ++l)
                for (int m = -l; m <= l; ++m) q[i][j] += e2 * std::conj(c.at(i, l, m)) * c.at(j, l, m);
    return q;
}

/// Same Gram tensor by brute quadrature of D*_i D_j.
inline M quadrature_gram(const chiral_berry::HarmonicDipoleModel& model, int n_theta, int n_phi)
{
    const double e2 = std::norm(model.spectral_amplitude);
    M q{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            q[i][j] = e2 * sphere_integral(
                               [&](double t, double p) {
                                   const auto d = dipole(model, t, p);
                                   return std::conj(d[i]) * d[j];
                               },
                               n_theta, n_phi);
    return q;
}

/// i |E|^2 integral of D* x D.
inline V propensity(const chiral_berry::HarmonicDipoleModel& model, int n_theta, int n_phi)
{
    const double e2 = std::norm(model.spectral_amplitude);
    V out{};
    for (int l = 0; l < 3; ++l)
        out[l] = I * e2 * sphere_integral(
                              [&](double t, double p) {
                                  const auto d = dipole(model, t, p);
                                  C s = 0;
                                  for (int i = 0; i < 3; ++i)
                                      for (int j = 0; j < 3; ++j) s += double(levi(l, i, j)) * std::conj(d[i]) * d[j];
                                  return s;
                              },
                              n_theta, n_phi);
    return out;
}

inline double max_abs(const M& a, const chiral_berry::ComplexMatrix3& b)
{
    double m = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
    return m;
}

inline double max_abs(const M& a)
{
    double m = 0;
    for (const auto& row : a)
        for (const auto& v : row) m = std::max(m, std::abs(v));
    return m;
}

} // namespace oracle
