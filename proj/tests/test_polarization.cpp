#include "chiral_berry/errors.hpp"
#include "chiral_berry/polarization.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace chiral_berry;

namespace {

double dev(const ComplexVec3& a, const oracle::V& b) { return oracle::max_abs(oracle::to_v(a), b); }

oracle::V real_v(const oracle::R& r, double s = 1.0) { return {s * r[0], s * r[1], s * r[2]}; }

std::vector<OrientationPoint> random_points(int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> t(0.01, kPi - 0.01), p(0, 2 * kPi);
    std::vector<OrientationPoint> out;
    for (int i = 0; i < n; ++i) {
        const double th = t(rng);
        out.push_back({th, p(rng)});
    }
    return out;
}

} // namespace

TEST(Polarization, FrameAtEquator)
{
    const auto f = spherical_frame({kPi / 2, 0});
    EXPECT_LT(dev(f.r, {1, 0, 0}), 1e-15);
    EXPECT_LT(dev(f.theta, {0, 0, -1}), 1e-15);
    EXPECT_LT(dev(f.phi, {0, 1, 0}), 1e-15);
    EXPECT_LT(dev(spherical_frame({kPi / 2, kPi / 2}).r, {0, 1, 0}), 1e-15);
}

TEST(Polarization, FrameOrthonormalEverywhere)
{
    for (const auto& p : random_points(200, 5)) {
        const auto f = spherical_frame(p);
        EXPECT_LT(std::abs(inner(f.theta, f.phi)), 1e-15);
        EXPECT_NEAR(norm(f.theta), 1.0, 1e-15);
        EXPECT_NEAR(norm(f.phi), 1.0, 1e-15);
    }
}

TEST(Polarization, CircularVectorAtEquator)
{
    const double h = 1 / std::sqrt(2.0);
    const oracle::V expected{0.0, oracle::I * h, -h};
    EXPECT_LT(dev(circular_vector({{kPi / 2, 0}, 1}), expected), 1e-15);
}

TEST(Polarization, CircularVectorNormAndHelicity)
{
    for (const auto& p : random_points(100, 6)) {
        const auto e = circular_vector({p, 1});
        EXPECT_NEAR(inner(e, e).real(), 1.0, 1e-14);
        EXPECT_LT(max_abs(circular_vector({p, -1}) - conj(e)), 1e-15);
        EXPECT_LT(dev(e, oracle::e_hat(p.theta, p.phi, 1)), 1e-15);
    }
    EXPECT_THROW(circular_vector({{1.0, 0.0}, 0}), std::invalid_argument);
}

TEST(Polarization, DerivativesClosedFormAtThousandNodes)
{
    double worst = 0;
    for (const auto& p : random_points(1000, 7)) {
        for (int s : {1, -1}) {
            const auto d = circular_vector_derivatives({p, s});
            const auto r = oracle::r_hat(p.theta, p.phi), th = oracle::theta_hat(p.theta, p.phi),
                       ph = oracle::phi_hat(p.theta, p.phi);
            oracle::V dphi;
            for (int i = 0; i < 3; ++i) {
                dphi[i] = (std::cos(p.theta) * ph[i] - oracle::I * double(s) * std::sin(p.theta) * r[i]
                           - oracle::I * double(s) * std::cos(p.theta) * th[i])
                        / std::sqrt(2.0);
            }
            worst = std::max({worst, dev(d.d_theta, real_v(r, -1 / std::sqrt(2.0))), dev(d.d_phi, dphi)});
            const auto fd = oracle::e_hat_derivatives(p.theta, p.phi, s);
            worst = std::max({worst, dev(d.d_theta, fd[0]), dev(d.d_phi, fd[1])});
        }
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(Polarization, DerivativesAgreeWithCentralDifferences)
{
    const double h = 1e-5;
    for (int s : {1, -1}) {
        const OrientationPoint p{1.0, 0.7};
        const auto d = circular_vector_derivatives({p, s});
        const auto dt = (circular_vector({{p.theta + h, p.phi}, s}) - circular_vector({{p.theta - h, p.phi}, s})) / (2 * h);
        const auto dp = (circular_vector({{p.theta, p.phi + h}, s}) - circular_vector({{p.theta, p.phi - h}, s})) / (2 * h);
        EXPECT_LT(max_abs(dt - d.d_theta), 1e-8);
        EXPECT_LT(max_abs(dp - d.d_phi), 1e-8);
    }
}

TEST(Polarization, ProjectionMap)
{
    for (const auto& p : random_points(200, 8)) {
        const auto r = oracle::r_hat(p.theta, p.phi);
        for (int s : {1, -1}) {
            const auto pi_e = projection_map(circular_vector({p, s}));
            EXPECT_LT(dev(pi_e, real_v(r, s / 2.0)), 1e-12);
            EXPECT_LT(max_abs_imag(pi_e), 1e-14);
        }
        EXPECT_LT(max_abs(projection_map(linear_vector({p, 0.4}))), 1e-15);
    }
    EXPECT_THROW(normalized_projection(linear_vector({{1.0, 0.2}, 0.3})), std::domain_error);
}

TEST(Polarization, XiDensity)
{
    for (const auto& p : random_points(1000, 9)) {
        const auto th = oracle::theta_hat(p.theta, p.phi);
        const auto xi = xi_density(p, 1);
        EXPECT_LT(dev(xi, real_v(th, std::cos(p.theta) / 2)), 1e-10);
        EXPECT_LT(max_abs(xi - xi_density(p, -1)), 1e-15);
    }
    EXPECT_LT(max_abs(xi_density({kPi / 2, 1.3}, 1)), 1e-16);
}

TEST(Polarization, FormDensitiesMatchIndexOracle)
{
    for (const auto& p : random_points(100, 10)) {
        for (int s : {1, -1}) {
            const auto fd = oracle::e_hat_derivatives(p.theta, p.phi, s);
            const auto f = oracle::forms(fd[0], fd[1]);
            EXPECT_LT(dev(xi_density(p, s), f[0]), 1e-8);
            EXPECT_LT(dev(zeta_density(p, s), f[1]), 1e-8);
            EXPECT_LT(dev(chi_density(p, s), f[2]), 1e-8);
        }
    }
}

TEST(Polarization, ZetaChiParityAndPhase)
{
    for (const auto& p : random_points(100, 11)) {
        using Density = ComplexVec3 (*)(OrientationPoint, int, double);
        for (Density fn : {Density{&zeta_density}, Density{&chi_density}}) {
            const auto plus = fn(p, 1, kDefaultPoleMargin);
            const auto minus = fn(p, -1, kDefaultPoleMargin);
            EXPECT_LT(max_abs(plus + minus), 1e-15);
            for (int i = 0; i < 3; ++i) EXPECT_EQ(plus[i].real(), 0.0);
        }
    }
    const OrientationPoint p{1.1, 2.0};
    const auto fd = oracle::e_hat_derivatives(p.theta, p.phi, 1);
    EXPECT_LT(dev(zeta_density(p, 1), oracle::forms(fd[0], fd[1])[1]), 1e-8);
}

TEST(Polarization, LinearVector)
{
    const OrientationPoint p{0.9, 2.2};
    const auto f = spherical_frame(p);
    EXPECT_LT(max_abs(linear_vector({p, 0.0}) - f.theta), 1e-15);
    EXPECT_LT(max_abs(linear_vector_derivatives({p, 0.0}).d_alpha - f.phi), 1e-15);
    const double h = 1e-5, a = 0.6;
    const auto d = linear_vector_derivatives({p, a});
    EXPECT_LT(max_abs((linear_vector({{p.theta + h, p.phi}, a}) - linear_vector({{p.theta - h, p.phi}, a})) / (2 * h)
                      - d.d_theta),
              1e-8);
    EXPECT_LT(max_abs((linear_vector({{p.theta, p.phi + h}, a}) - linear_vector({{p.theta, p.phi - h}, a})) / (2 * h)
                      - d.d_phi),
              1e-8);
    EXPECT_LT(max_abs((linear_vector({p, a + h}) - linear_vector({p, a - h})) / (2 * h) - d.d_alpha), 1e-8);
}

TEST(Polarization, PoleMargin)
{
    EXPECT_THROW(spherical_frame({1e-4, 0.0}), PoleSingularity);
    EXPECT_THROW(circular_vector({{kPi - 1e-4, 0.0}, 1}), PoleSingularity);
    EXPECT_NO_THROW(spherical_frame({2e-3, 0.0}));
}

TEST(Polarization, GridAxes)
{
    const auto axes = make_grid_axes({16, 32, kDefaultPoleMargin, ThetaSpacing::uniform});
    ASSERT_EQ(axes.theta.size(), 16u);
    ASSERT_EQ(axes.phi.size(), 32u);
    EXPECT_GT(axes.theta.front(), kDefaultPoleMargin);
    EXPECT_LT(axes.theta.back(), kPi - kDefaultPoleMargin);
    EXPECT_DOUBLE_EQ(axes.phi[1], 2 * kPi / 32);
    const auto grid = sample_form_density({8, 8, kDefaultPoleMargin, ThetaSpacing::gauss_legendre}, FormKind::xi, 1);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            EXPECT_LT(max_abs(grid.at(i, j) - xi_density({grid.axes.theta[i], grid.axes.phi[j]}, 1)), 1e-15);
}
