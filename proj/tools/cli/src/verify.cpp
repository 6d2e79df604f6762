#include "chiral_berry/berry.hpp"
#include "chiral_berry/cli/commands.hpp"
#include "chiral_berry/errors.hpp"
#include "chiral_berry/pumpprobe.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace chiral_berry::cli {

namespace {

VerifySuite upper(std::string name, double residual, double threshold)
{
    return {std::move(name), residual, threshold, false, residual < threshold};
}

VerifySuite lower(std::string name, double residual, double threshold)
{
    return {std::move(name), residual, threshold, true, residual > threshold};
}

std::vector<OrientationPoint> sample_points(std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> theta(0.1, kPi - 0.1);
    std::uniform_real_distribution<double> phi(0.0, 2.0 * kPi);
    std::vector<OrientationPoint> pts;
    for (int i = 0; i < count; ++i) {
        const double t = theta(rng);
        pts.push_back({t, phi(rng)});
    }
    return pts;
}

double model_scale(const ComplexMatrix3& q) { return std::max(1.0, max_abs(q)); }

double fd_derivative_residual(const std::vector<OrientationPoint>& pts)
{
    constexpr double h = 1e-5;
    double worst = 0.0;
    for (const auto& p : pts) {
        for (int sigma : {1, -1}) {
            const auto d = circular_vector_derivatives({p, sigma});
            const auto dt = (circular_vector({{p.theta + h, p.phi}, sigma})
                             - circular_vector({{p.theta - h, p.phi}, sigma}))
                          / (2.0 * h);
            const auto dp = (circular_vector({{p.theta, p.phi + h}, sigma})
                             - circular_vector({{p.theta, p.phi - h}, sigma}))
                          / (2.0 * h);
            worst = std::max({worst, max_abs(dt - d.d_theta), max_abs(dp - d.d_phi)});
        }
        const double alpha = 0.3 + p.phi / 7.0;
        const auto ld = linear_vector_derivatives({p, alpha});
        const auto lt = (linear_vector({{p.theta + h, p.phi}, alpha}) - linear_vector({{p.theta - h, p.phi}, alpha}))
                      / (2.0 * h);
        const auto lp = (linear_vector({{p.theta, p.phi + h}, alpha}) - linear_vector({{p.theta, p.phi - h}, alpha}))
                      / (2.0 * h);
        const auto la = (linear_vector({p, alpha + h}) - linear_vector({p, alpha - h})) / (2.0 * h);
        worst = std::max({worst, max_abs(lt - ld.d_theta), max_abs(lp - ld.d_phi), max_abs(la - ld.d_alpha)});
    }
    return worst;
}

double pseudovector_residual(const DipoleModel& model, const QuadratureRule& rule, std::uint64_t seed)
{
    std::mt19937_64 rng(seed + 17);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    const auto base = propensity_vector(model, rule, true);

    std::vector<Matrix3> maps;
    for (int i = 0; i < 10; ++i) {
        maps.push_back(rotation_matrix({normal(rng), normal(rng), normal(rng)}, angle(rng)));
    }
    maps.push_back({{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}});
    maps.push_back({{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
    Vec3 n{normal(rng), normal(rng), normal(rng)};
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    Matrix3 householder = identity3();
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            householder[i][j] -= 2.0 * n[i] * n[j] / (len * len);
        }
    }
    maps.push_back(householder);

    double worst = 0.0;
    for (const auto& m : maps) {
        const auto transformed = propensity_vector(transform_model(model, m), rule, true);
        const auto expected = determinant(m) * (m * base);
        worst = std::max(worst, max_abs(transformed - expected));
    }
    return worst;
}

} // namespace

std::vector<VerifySuite> run_verification(const RunConfig& config, int threads)
{
    const auto model = build_model(config);
    const auto rule = build_rule(config);
    const double margin = config.grid.pole_margin;
    // Throws QuadratureUnderResolved before any suite runs.
    const BerryGeometry geom(model, rule, config.allow_under_resolved, margin);
    const auto& tensor = geom.curvature();
    const double scale = model_scale(tensor.gram);
    const int sigma = config.field.sigma;
    const auto pts = sample_points(config.seed, 64);

    std::vector<VerifySuite> out;

    // Index identities.
    int lemma_failures = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l)
                for (int m = 0; m < 3; ++m)
                    lemma_failures += symmetrized_levi_civita_lhs(i, j, l, m) != symmetrized_levi_civita_rhs(i, j, l, m);
    out.push_back(upper("levi_civita_symmetrized_lemma", lemma_failures, 0.5));
    out.push_back(upper("levi_civita_signed_contraction", signed_levi_civita_identity_check() ? 0.0 : 1.0, 0.5));
    out.push_back(upper("antisymmetric_contraction_identity",
                        contraction_identity_check(config.seed + 1, 100).max_residual, 1e-12));

    // Polarization geometry.
    double frame = 0.0, projection = 0.0, xi = 0.0;
    for (const auto& p : pts) {
        const auto f = spherical_frame(p, margin);
        frame = std::max({frame, std::abs(inner(f.theta, f.phi)), std::abs(norm(f.theta) - 1.0),
                          std::abs(norm(f.phi) - 1.0), max_abs(cross(f.theta, f.phi) - f.r)});
        for (int s : {1, -1}) {
            projection = std::max(projection, max_abs(projection_map(circular_vector({p, s})) - 0.5 * s * f.r));
            xi = std::max(xi, max_abs(xi_density(p, s) - 0.5 * std::cos(p.theta) * f.theta));
        }
    }
    out.push_back(upper("frame_orthonormality", frame, 1e-12));
    out.push_back(upper("polarization_derivatives_fd", fd_derivative_residual(pts), 1e-8));
    out.push_back(upper("projection_map_half_radial", projection, 1e-12));
    out.push_back(upper("xi_density_closed_form", xi, 1e-10));

    // Molecular tensors.
    const auto eig = hermitian_eigenvalues(tensor.gram);
    out.push_back(upper("gram_hermitian", max_abs_diff(tensor.gram, adjoint(tensor.gram)), 1e-12));
    out.push_back(lower("gram_positive_semidefinite", eig[0], -1e-10 * scale));
    double oracle = 0.0;
    if (!config.model.transform && !config.allow_under_resolved) {
        const auto h = std::get<HarmonicDipoleModel>(model);
        oracle = max_abs_diff(tensor.gram, coefficient_gram_tensor(h)) / scale;
    }
    for (int k = 0; k < 20; ++k) {
        const auto random = models::random_harmonic(config.seed * 131 + static_cast<std::uint64_t>(k), k % 5);
        const auto q = gram_tensor(random, default_rule(k % 5));
        oracle = std::max(oracle, max_abs_diff(q, coefficient_gram_tensor(random)) / model_scale(q));
    }
    out.push_back(upper("gram_closed_form_oracle", oracle, 1e-10));
    out.push_back(upper("propensity_two_routes",
                        max_abs(tensor.antisym_vector - propensity_vector(model, rule, config.allow_under_resolved))
                            / scale,
                        1e-12));
    out.push_back(upper("propensity_real", max_abs_imag(tensor.antisym_vector) / scale, 1e-12));
    out.push_back(upper("pseudovector_law",
                        std::max(pseudovector_residual(model, rule, config.seed),
                                 pseudovector_residual(models::random_harmonic(config.seed + 3, 2), default_rule(2),
                                                       config.seed)),
                        1e-8));
    out.push_back(upper("gram_reconstruction", max_abs_diff(reconstruct_gram(tensor), tensor.gram) / scale, 1e-12));

    // Curvature density: channel assembly against direct contraction, then dA.
    const auto axes = make_grid_axes(config.grid);
    std::vector<double> node_residual(axes.theta.size(), 0.0);
    parallel_for(axes.theta.size(), threads, [&](std::size_t i) {
        for (double phi : axes.phi) {
            const OrientationPoint p{axes.theta[i], phi};
            node_residual[i] = std::max(node_residual[i],
                                        std::abs(geom.curvature_density(p, sigma) - geom.direct_density(p, sigma)));
        }
    });
    out.push_back(upper("decomposition_completeness",
                        *std::max_element(node_residual.begin(), node_residual.end()) / scale, 1e-10));

    double ext = 0.0;
    for (std::size_t k = 0; k < 8; ++k) {
        ext = std::max(ext, geom.exterior_derivative_check(pts[k], sigma, 1e-4));
    }
    out.push_back(upper("exterior_derivative", ext / scale, 1e-6));

    // Halving the step should cut the truncation error by about four.
    const OrientationPoint probe{1.2, 0.5};
    const double coarse = geom.exterior_derivative_check(probe, sigma, 1e-2);
    const double fine = geom.exterior_derivative_check(probe, sigma, 5e-3);
    const double order_error = coarse > 1e-9 * scale ? std::abs(std::log2(coarse / fine) - 2.0) : 0.0;
    out.push_back(upper("exterior_derivative_second_order", order_error, 0.1));

    const auto annulus = config.annulus.value_or(AnnulusSpec{});
    out.push_back(upper("stokes_annulus",
                        geom.stokes_check(annulus.theta1, annulus.theta2, sigma,
                                          {annulus.n_theta, annulus.n_phi, config.loop.segments})
                                .residual
                            / scale,
                        1e-6));

    const auto loop = LoopPath::latitude_circle(1.1, 97, true, 0.3, margin);
    const auto forward = geom.loop_phase(loop, sigma);
    const auto backward = geom.loop_phase(loop.reversed(), sigma);
    out.push_back(upper("loop_orientation_antisymmetry", std::abs(forward.raw + backward.raw) / scale, 1e-12));

    // Holomorphy: the configured amplitude and a fixed negative control.
    const auto kind =
        config.anti_holomorphic_amplitude ? AmplitudeKind::antiholomorphic_control : AmplitudeKind::holomorphic;
    double holo = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        holo = std::max(holo, holomorphy_check(AmplitudeField(model, kind), pts[k], sigma, 1e-6));
    }
    out.push_back(upper("holomorphy", holo, 1e-8));
    out.push_back(lower("holomorphy_negative_control",
                        holomorphy_check(AmplitudeField(models::chiral_demo(), AmplitudeKind::antiholomorphic_control),
                                         pts[0], sigma, 1e-6),
                        1e-3));

    // Pump-probe blocks.
    auto second = config.field.second.value_or(SecondFieldSpec{});
    TwoPhotonAmplitudeModel two{model, second.bound_dipole, FieldOrdering::linear_first};
    const auto two_field = make_two_field(config.probe_point, sigma, second.alpha, second.coupling);
    const PumpProbeGeometry pp(two, rule, second.coupling, config.allow_under_resolved, margin);
    out.push_back(upper("pumpprobe_one_field_reduction", one_field_reduction_check(two, rule, two_field), 1e-10));
    TwoPhotonAmplitudeModel real_d{model, real_part(second.bound_dipole), FieldOrdering::linear_first};
    const auto real_blocks = PumpProbeGeometry(real_d, rule, second.coupling, config.allow_under_resolved, margin)
                                 .curvature_blocks(two_field);
    out.push_back(upper("pumpprobe_real_d_linear_block", max_abs(real_blocks.omega_eps) / scale, 1e-12));
    out.push_back(upper("pumpprobe_exterior_derivative", pp.exterior_derivative_check(two_field, 1e-4) / scale, 1e-6));

    return out;
}

} // namespace chiral_berry::cli
