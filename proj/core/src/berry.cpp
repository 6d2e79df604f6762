#include "chiral_berry/berry.hpp"

#include "chiral_berry/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace chiral_berry {

namespace {

constexpr Complex kI{0.0, 1.0};

bool same_point_mod_2pi(OrientationPoint a, OrientationPoint b)
{
    constexpr double tol = 1e-12;
    if (std::abs(a.theta - b.theta) > tol) {
        return false;
    }
    const double turns = (b.phi - a.phi) / (2.0 * kPi);
    return std::abs(turns - std::round(turns)) * 2.0 * kPi < tol;
}

} // namespace

CurvatureTensor decompose(const ComplexMatrix3& gram)
{
    CurvatureTensor t;
    t.gram = gram;
    t.antisym_vector = antisymmetric_contraction(gram);
    for (int l = 0; l < 3; ++l) {
        Complex off{};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (levi_civita(l, i, j) != 0) {
                    off += gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                }
            }
        }
        const auto ul = static_cast<std::size_t>(l);
        t.diamond_vector[ul] = kI * off;
        t.diagonal_vector[ul] = kI * gram[ul][ul];
    }
    return t;
}

ComplexMatrix3 reconstruct_gram(const CurvatureTensor& t)
{
    ComplexMatrix3 q{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Complex iq{};
            if (i == j) {
                iq = t.diagonal_vector[static_cast<std::size_t>(i)];
            } else {
                for (int n = 0; n < 3; ++n) {
                    const auto un = static_cast<std::size_t>(n);
                    iq += 0.5 * static_cast<double>(levi_civita(n, i, j)) * t.antisym_vector[un];
                    iq += 0.5 * static_cast<double>(std::abs(levi_civita(n, i, j))) * t.diamond_vector[un];
                }
            }
            q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = iq / kI;
        }
    }
    return q;
}

CurvatureTensor curvature_tensor(const DipoleModel& model, const QuadratureRule& rule, bool allow_under_resolved)
{
    return decompose(gram_tensor(model, rule, allow_under_resolved));
}

Complex wedge_contraction_density(const ComplexMatrix3& gram, const AngularDerivatives& d)
{
    const auto w = wedge_coefficients(d);
    Complex sum{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            sum += gram[i][j] * w[i][j];
        }
    }
    return kI * sum;
}

LoopPath::LoopPath(std::vector<OrientationPoint> points, double pole_margin) : points_(std::move(points))
{
    if (points_.empty()) {
        throw OpenPath("loop path has no points");
    }
    if (!same_point_mod_2pi(points_.front(), points_.back())) {
        throw OpenPath("loop path is not closed: first and last points differ");
    }
    for (const auto& p : points_) {
        require_off_pole(p, pole_margin);
    }
}

LoopPath LoopPath::latitude_circle(double theta0, int segments, bool counter_clockwise, double phi0,
                                   double pole_margin)
{
    if (segments < 1) {
        throw std::invalid_argument("latitude circle needs at least one segment");
    }
    std::vector<OrientationPoint> pts;
    pts.reserve(static_cast<std::size_t>(segments) + 1);
    const double sign = counter_clockwise ? 1.0 : -1.0;
    for (int k = 0; k <= segments; ++k) {
        pts.push_back({theta0, phi0 + sign * 2.0 * kPi * k / segments});
    }
    LoopPath path(std::move(pts), pole_margin);
    path.latitude_ = true;
    return path;
}

LoopPath LoopPath::reversed() const
{
    LoopPath out = *this;
    std::reverse(out.points_.begin(), out.points_.end());
    return out;
}

double principal_value(double phase)
{
    double p = std::remainder(phase, 2.0 * kPi);
    if (p <= -kPi) {
        p += 2.0 * kPi;
    }
    return p;
}

BerryGeometry::BerryGeometry(const DipoleModel& model, const QuadratureRule& rule, bool allow_under_resolved,
                             double pole_margin)
    : tensor_(curvature_tensor(model, rule, allow_under_resolved)), pole_margin_(pole_margin)
{
}

BerryGeometry::BerryGeometry(const ComplexMatrix3& gram, double pole_margin)
    : tensor_(decompose(gram)), pole_margin_(pole_margin)
{
}

ConnectionSample BerryGeometry::connection_at(const CircularPolarization& cp) const
{
    const auto e = circular_vector(cp, pole_margin_);
    const auto d = circular_vector_derivatives(cp, pole_margin_);
    const auto& q = tensor_.gram;

    ConnectionSample s;
    s.point = cp.point;
    for (std::size_t j = 0; j < 3; ++j) {
        Complex sum{};
        for (std::size_t i = 0; i < 3; ++i) {
            sum += std::conj(e[i]) * q[i][j];
        }
        s.a_vec[j] = kI * sum;
    }
    s.a_theta = dot(s.a_vec, d.d_theta);
    s.a_phi = dot(s.a_vec, d.d_phi);
    return s;
}

DensityChannels BerryGeometry::channel_densities(OrientationPoint p, int sigma) const
{
    const auto d = circular_vector_derivatives({p, sigma}, pole_margin_);
    return {
        dot(tensor_.antisym_vector, xi_density(d)),
        dot(tensor_.diamond_vector, zeta_density(d)),
        dot(tensor_.diagonal_vector, chi_density(d)),
    };
}

Complex BerryGeometry::curvature_density(OrientationPoint p, int sigma) const
{
    return channel_densities(p, sigma).total();
}

Complex BerryGeometry::direct_density(OrientationPoint p, int sigma) const
{
    return wedge_contraction_density(tensor_.gram, circular_vector_derivatives({p, sigma}, pole_margin_));
}

double BerryGeometry::exterior_derivative_check(OrientationPoint p, int sigma, double fd_step) const
{
    const double h = fd_step;
    auto a = [&](double theta, double phi) { return connection_at({{theta, phi}, sigma}); };
    const Complex d_theta_a_phi = (a(p.theta + h, p.phi).a_phi - a(p.theta - h, p.phi).a_phi) / (2.0 * h);
    const Complex d_phi_a_theta = (a(p.theta, p.phi + h).a_theta - a(p.theta, p.phi - h).a_theta) / (2.0 * h);
    return std::abs(d_theta_a_phi - d_phi_a_theta - curvature_density(p, sigma));
}

Complex BerryGeometry::line_integral(const std::vector<OrientationPoint>& points, int sigma) const
{
    CompensatedSum acc;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        const auto& p0 = points[k];
        const auto& p1 = points[k + 1];
        const auto c0 = connection_at({p0, sigma});
        const auto c1 = connection_at({p1, sigma});
        acc.add(0.5 * (c0.a_theta + c1.a_theta) * (p1.theta - p0.theta));
        acc.add(0.5 * (c0.a_phi + c1.a_phi) * (p1.phi - p0.phi));
    }
    return acc.value();
}

LoopPhase BerryGeometry::loop_phase(const LoopPath& path, int sigma) const
{
    const auto& pts = path.points();
    Complex value{};
    if (path.is_latitude_circle() && pts.size() > 1) {
        // Periodic trapezoid: the closing endpoint duplicates the first node.
        CompensatedSum acc;
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            acc.add(connection_at({pts[k], sigma}).a_phi * (pts[k + 1].phi - pts[k].phi));
        }
        value = acc.value();
    } else {
        value = line_integral(pts, sigma);
    }
    return {value.real(), principal_value(value.real()), value.imag()};
}

StokesReport BerryGeometry::stokes_check(double theta1, double theta2, int sigma, const StokesOptions& options) const
{
    if (theta1 > theta2) {
        throw std::invalid_argument("stokes_check requires theta1 <= theta2");
    }
    require_off_pole({theta1, 0.0}, pole_margin_);
    require_off_pole({theta2, 0.0}, pole_margin_);

    StokesReport report;
    if (theta1 == theta2) {
        return report;
    }
    const auto outer = LoopPath::latitude_circle(theta2, options.loop_segments, true, 0.0, pole_margin_);
    const auto inner = LoopPath::latitude_circle(theta1, options.loop_segments, true, 0.0, pole_margin_);
    report.boundary = loop_phase(outer, sigma).raw - loop_phase(inner, sigma).raw;

    const auto gl = gauss_legendre(options.n_theta);
    const double half = 0.5 * (theta2 - theta1), mid = 0.5 * (theta2 + theta1);
    const double dphi = 2.0 * kPi / options.n_phi;
    CompensatedSum acc;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double theta = mid + half * gl.nodes[i];
        const double w = half * gl.weights[i] * dphi;
        for (int j = 0; j < options.n_phi; ++j) {
            acc.add(w * curvature_density({theta, dphi * j}, sigma));
        }
    }
    report.surface = acc.value().real();
    report.residual = std::abs(report.boundary - report.surface);
    return report;
}

ConnectionSample connection_at(const DipoleModel& model, const QuadratureRule& rule, const CircularPolarization& cp)
{
    return BerryGeometry(model, rule).connection_at(cp);
}

Complex curvature_density(const DipoleModel& model, const QuadratureRule& rule, OrientationPoint p, int sigma)
{
    return BerryGeometry(model, rule).curvature_density(p, sigma);
}

double exterior_derivative_check(const DipoleModel& model, const QuadratureRule& rule, OrientationPoint p, int sigma,
                                 double fd_step)
{
    return BerryGeometry(model, rule).exterior_derivative_check(p, sigma, fd_step);
}

LoopPhase loop_phase(const DipoleModel& model, const QuadratureRule& rule, const LoopPath& path, int sigma)
{
    return BerryGeometry(model, rule).loop_phase(path, sigma);
}

StokesReport stokes_check(const DipoleModel& model, const QuadratureRule& rule, double theta1, double theta2,
                          int sigma, const StokesOptions& options)
{
    return BerryGeometry(model, rule).stokes_check(theta1, theta2, sigma, options);
}

AmplitudeField::AmplitudeField(DipoleModel model, AmplitudeKind kind) : model_(std::move(model)), kind_(kind) {}

Complex AmplitudeField::amplitude(const Vec3& direction, const ComplexVec3& e) const
{
    const auto d = evaluate_dipole(model_, direction);
    const Complex amp = spectral_amplitude(model_);
    if (kind_ == AmplitudeKind::antiholomorphic_control) {
        return -amp * dot(d, conj(e));
    }
    return -amp * dot(d, e);
}

ComplexVec3 AmplitudeField::gradient_e(const Vec3& direction) const
{
    if (kind_ == AmplitudeKind::antiholomorphic_control) {
        return {};
    }
    return -spectral_amplitude(model_) * evaluate_dipole(model_, direction);
}

ComplexVec3 AmplitudeField::gradient_e_conj(const Vec3& direction) const
{
    if (kind_ == AmplitudeKind::holomorphic) {
        return {};
    }
    return -spectral_amplitude(model_) * evaluate_dipole(model_, direction);
}

double holomorphy_check(const AmplitudeField& field, OrientationPoint p, int sigma, double fd_step)
{
    const auto e = circular_vector({p, sigma});
    const QuadratureRule directions(std::max(4, 2 * band_limit(field.model()) + 2));
    const double h = fd_step;
    double worst = 0.0;
    for (const auto& node : directions.nodes()) {
        for (std::size_t i = 0; i < 3; ++i) {
            auto shifted = [&](Complex delta) {
                auto v = e;
                v[i] += delta;
                return field.amplitude(node.direction, v);
            };
            const Complex d_re = (shifted(h) - shifted(-h)) / (2.0 * h);
            const Complex d_im = (shifted(Complex(0.0, h)) - shifted(Complex(0.0, -h))) / (2.0 * h);
            worst = std::max(worst, std::abs(0.5 * (d_re + kI * d_im)));
        }
    }
    return worst;
}

double holomorphy_check(const DipoleModel& model, OrientationPoint p, int sigma, double fd_step)
{
    return holomorphy_check(AmplitudeField(model), p, sigma, fd_step);
}

} // namespace chiral_berry
