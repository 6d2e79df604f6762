#include "chiral_berry/pumpprobe.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace chiral_berry;

namespace {

const ComplexVec3 kBound{Complex{0.3, 0.1}, Complex{0.0, 0.2}, 1.0};
const Complex kG{0.8, 0.3};

oracle::C amp(const oracle::V& d, const oracle::V& e, const oracle::V& eps, const oracle::V& bound, oracle::C g)
{
    oracle::C de = 0, be = 0;
    for (int i = 0; i < 3; ++i) {
        de += d[i] * e[i];
        be += bound[i] * eps[i];
    }
    return -g * de * be;
}

} // namespace

TEST(PumpProbe, ZeroBoundDipoleVanishes)
{
    const TwoPhotonAmplitudeModel model{models::chiral_demo(), ComplexVec3{}, FieldOrdering::linear_first};
    const auto cfg = make_two_field({1.0, 0.7}, 1, 0.4, kG);
    const PumpProbeGeometry geom(model, default_rule(2), kG);
    const auto c = geom.split_connection(cfg);
    const auto b = geom.curvature_blocks(cfg);
    EXPECT_EQ(max_abs(c.a_e) + max_abs(c.a_eps), 0.0);
    EXPECT_EQ(max_abs(b.omega_e) + max_abs(b.omega_eps) + max_abs(b.cross_vector) + max_abs(b.cross_tensor), 0.0);
    EXPECT_EQ(one_field_reduction_check(model, default_rule(2), cfg), 0.0);
}

TEST(PumpProbe, SplitConnectionAgainstBruteQuadrature)
{
    const auto demo = models::circular_demo();
    const oracle::V bound{0.0, 0.0, 1.0};
    const TwoPhotonAmplitudeModel model{demo, ComplexVec3{0, 0, 1}, FieldOrdering::linear_first};
    const OrientationPoint p{1.0, 0.7};
    const auto cfg = make_two_field(p, 1, 0.0, kG);
    const auto c = split_connection(model, default_rule(2), cfg);
    const auto e = oracle::e_hat(p.theta, p.phi, 1);
    const auto th = oracle::theta_hat(p.theta, p.phi);
    const oracle::V eps{th[0], th[1], th[2]};
    for (int j = 0; j < 3; ++j) {
        const auto ref = oracle::I * oracle::sphere_integral(
                                         [&](double t, double ph) {
                                             const auto d = oracle::dipole(demo, t, ph);
                                             const auto a = amp(d, e, eps, bound, kG);
                                             oracle::C be = 0;
                                             for (int i = 0; i < 3; ++i) be += bound[i] * eps[i];
                                             return std::conj(a) * (-kG * d[j] * be);
                                         },
                                         8, 9);
        EXPECT_LT(std::abs(c.a_e[j] - ref), 1e-10);
    }
}

TEST(PumpProbe, OmegaEReducesToOneFieldPropensity)
{
    const OrientationPoint p{1.0, 0.7};
    std::vector<HarmonicDipoleModel> ms{models::chiral_demo(), models::zero(1)};
    for (std::uint64_t s = 0; s < 20; ++s) ms.push_back(models::random_harmonic(700 + s, 2));
    for (const auto& m : ms) {
        const TwoPhotonAmplitudeModel model{m, kBound, FieldOrdering::linear_first};
        const auto cfg = make_two_field(p, 1, 0.4, kG);
        const auto rule = default_rule(m.coefficients.l_max());
        EXPECT_LT(one_field_reduction_check(model, rule, cfg), 1e-10);
        auto unit = m;
        unit.spectral_amplitude = 1.0;
        const auto ref = oracle::propensity(unit, 6, 7);
        const auto omega = curvature_blocks(model, rule, cfg).omega_e;
        const double coupling = linear_coupling(model, cfg);
        for (int l = 0; l < 3; ++l) EXPECT_LT(std::abs(omega[l] - coupling * ref[l]), 1e-10);
    }
}

TEST(PumpProbe, LinearBlock)
{
    const OrientationPoint p{1.3, 2.1};
    const auto cfg = make_two_field(p, -1, 0.9, kG);
    const auto m = models::chiral_demo();
    const TwoPhotonAmplitudeModel real_d{m, ComplexVec3{0.2, -0.5, 1.0}, FieldOrdering::linear_first};
    EXPECT_LT(max_abs(curvature_blocks(real_d, default_rule(2), cfg).omega_eps), 1e-12);

    // i |G|^2 (d* x d) integral |D.e|^2.
    const TwoPhotonAmplitudeModel complex_d{m, kBound, FieldOrdering::linear_first};
    const auto omega = curvature_blocks(complex_d, default_rule(2), cfg).omega_eps;
    const auto e = oracle::e_hat(p.theta, p.phi, -1);
    const double weight = oracle::sphere_integral(
        [&](double t, double ph) {
            const auto d = oracle::dipole(m, t, ph);
            return std::norm(d[0] * e[0] + d[1] * e[1] + d[2] * e[2]);
        },
        6, 7);
    const auto dv = oracle::to_v(kBound);
    for (int l = 0; l < 3; ++l) {
        oracle::C c = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) c += double(oracle::levi(l, i, j)) * std::conj(dv[i]) * dv[j];
        EXPECT_LT(std::abs(omega[l] - oracle::I * std::norm(kG) * c * weight), 1e-12);
    }
}

TEST(PumpProbe, CrossTensor)
{
    const OrientationPoint p{0.8, 0.2};
    const auto cfg = make_two_field(p, 1, 0.3, kG);
    const auto m = models::random_harmonic(31, 2);
    const TwoPhotonAmplitudeModel model{m, kBound, FieldOrdering::linear_first};
    const auto blocks = curvature_blocks(model, default_rule(2), cfg);
    const auto q = oracle::coefficient_gram(HarmonicDipoleModel{m.coefficients, 1.0});
    const auto e = oracle::e_hat(p.theta, p.phi, 1);
    const auto eps = oracle::to_v(linear_vector({p, 0.3}));
    const auto dv = oracle::to_v(kBound);
    oracle::C b_eps = 0;
    for (int i = 0; i < 3; ++i) b_eps += dv[i] * eps[i];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            oracle::C qe = 0;
            for (int k = 0; k < 3; ++k) qe += std::conj(e[k]) * q[k][j];
            const auto ref = std::norm(kG) * std::conj(dv[i]) * b_eps * qe;
            EXPECT_LT(std::abs(blocks.cross_tensor[i][j] - ref), 1e-12);
        }
    for (int n = 0; n < 3; ++n) {
        Complex s = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s += double(oracle::levi(n, i, j)) * blocks.cross_tensor[i][j];
        EXPECT_LT(std::abs(blocks.cross_vector[n] - s), 1e-15);
    }
}

TEST(PumpProbe, PhaseAdditivityAndExteriorDerivative)
{
    const TwoPhotonAmplitudeModel model{models::chiral_demo(), kBound, FieldOrdering::linear_first};
    const PumpProbeGeometry geom(model, default_rule(2), kG);
    const auto path = LoopPath::latitude_circle(1.1, 360);
    const auto ph = geom.loop_phase(path, 1, 0.5);
    EXPECT_NEAR(ph.total.raw, ph.circular.raw + ph.linear.raw, 1e-13);

    // The circular part is the trapezoid sum of the pulled-back A_e.
    double manual = 0;
    const auto& pts = path.points();
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const auto a = geom.pullback(make_two_field(pts[k], 1, 0.5, kG));
        const auto b = geom.pullback(make_two_field(pts[k + 1], 1, 0.5, kG));
        manual += 0.5 * (a.a_phi_e + b.a_phi_e).real() * (pts[k + 1].phi - pts[k].phi);
    }
    EXPECT_NEAR(ph.circular.raw, manual, 1e-10);

    for (const auto ordering : {FieldOrdering::linear_first, FieldOrdering::circular_first}) {
        const PumpProbeGeometry g({models::chiral_demo(), kBound, ordering}, default_rule(2), kG);
        EXPECT_LT(g.exterior_derivative_check(make_two_field({1.2, 0.4}, 1, 0.7, kG), 1e-4), 1e-6);
    }
}

TEST(PumpProbe, Preconditions)
{
    const TwoPhotonAmplitudeModel model{models::chiral_demo(), kBound, FieldOrdering::circular_first};
    EXPECT_THROW(one_field_reduction_check(model, default_rule(2), make_two_field({1.0, 0.7}, 1, 0.4)),
                 std::invalid_argument);
    TwoFieldConfiguration bad = make_two_field({1.0, 0.7}, 1, 0.4);
    bad.linear.point.theta = 1.5;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}
