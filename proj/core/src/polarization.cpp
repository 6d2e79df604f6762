#include "chiral_berry/polarization.hpp"

#include "chiral_berry/errors.hpp"
#include "chiral_berry/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chiral_berry {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_helicity(int sigma)
{
    if (sigma != 1 && sigma != -1) {
        throw std::invalid_argument("helicity sigma must be +1 or -1, got " + std::to_string(sigma));
    }
}

} // namespace

void require_off_pole(OrientationPoint p, double pole_margin)
{
    if (!(p.theta > pole_margin && p.theta < kPi - pole_margin)) {
        throw PoleSingularity("theta = " + std::to_string(p.theta) + " lies within the pole margin "
                              + std::to_string(pole_margin));
    }
}

SphericalFrame spherical_frame(OrientationPoint p, double pole_margin)
{
    require_off_pole(p, pole_margin);
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    const double sp = std::sin(p.phi), cp = std::cos(p.phi);
    return {
        {st * cp, st * sp, ct},
        {ct * cp, ct * sp, -st},
        {-sp, cp, 0.0},
    };
}

ComplexVec3 circular_vector(const CircularPolarization& cp, double pole_margin)
{
    require_helicity(cp.sigma);
    const auto f = spherical_frame(cp.point, pole_margin);
    return (f.theta + Complex(0.0, cp.sigma) * f.phi) * kInvSqrt2;
}

AngularDerivatives circular_vector_derivatives(const CircularPolarization& cp, double pole_margin)
{
    require_helicity(cp.sigma);
    const auto f = spherical_frame(cp.point, pole_margin);
    const double st = std::sin(cp.point.theta), ct = std::cos(cp.point.theta);
    const Complex is(0.0, cp.sigma);

    AngularDerivatives d;
    d.d_theta = -f.r * kInvSqrt2;
    d.d_phi = (ct * f.phi - is * st * f.r - is * ct * f.theta) * kInvSqrt2;
    return d;
}

ComplexVec3 linear_vector(const LinearPolarization& lp, double pole_margin)
{
    const auto f = spherical_frame(lp.point, pole_margin);
    return std::cos(lp.alpha) * f.theta + std::sin(lp.alpha) * f.phi;
}

LinearDerivatives linear_vector_derivatives(const LinearPolarization& lp, double pole_margin)
{
    const auto f = spherical_frame(lp.point, pole_margin);
    const double st = std::sin(lp.point.theta), ct = std::cos(lp.point.theta);
    const double ca = std::cos(lp.alpha), sa = std::sin(lp.alpha);

    LinearDerivatives d;
    d.d_theta = -ca * f.r;
    d.d_phi = ca * ct * f.phi - sa * (st * f.r + ct * f.theta);
    d.d_alpha = -sa * f.theta + ca * f.phi;
    return d;
}

ComplexVec3 projection_map(const ComplexVec3& e) { return cross(conj(e), e) / Complex(0.0, 2.0); }

ComplexVec3 normalized_projection(const ComplexVec3& e)
{
    const auto p = projection_map(e);
    const double len = norm(p);
    if (len == 0.0) {
        throw std::domain_error("projection map vanishes for a linearly polarized vector");
    }
    return p / len;
}

ComplexMatrix3 wedge_coefficients(const AngularDerivatives& d)
{
    ComplexMatrix3 w{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            w[i][j] = std::conj(d.d_theta[i]) * d.d_phi[j] - std::conj(d.d_phi[i]) * d.d_theta[j];
        }
    }
    return w;
}

ComplexVec3 xi_density(const AngularDerivatives& d) { return real_part(cross(conj(d.d_theta), d.d_phi)); }

ComplexVec3 zeta_density(const AngularDerivatives& d)
{
    return Complex(0.0, 1.0) * imag_part(diamond(conj(d.d_theta), d.d_phi));
}

ComplexVec3 chi_density(const AngularDerivatives& d)
{
    return Complex(0.0, 2.0) * imag_part(odot(conj(d.d_theta), d.d_phi));
}

ComplexVec3 xi_density(OrientationPoint p, int sigma, double pole_margin)
{
    return xi_density(circular_vector_derivatives({p, sigma}, pole_margin));
}

ComplexVec3 zeta_density(OrientationPoint p, int sigma, double pole_margin)
{
    return zeta_density(circular_vector_derivatives({p, sigma}, pole_margin));
}

ComplexVec3 chi_density(OrientationPoint p, int sigma, double pole_margin)
{
    return chi_density(circular_vector_derivatives({p, sigma}, pole_margin));
}

const char* form_name(FormKind kind)
{
    switch (kind) {
    case FormKind::xi:
        return "xi";
    case FormKind::zeta:
        return "zeta";
    case FormKind::chi:
        return "chi";
    }
    return "?";
}

GridAxes make_grid_axes(const GridSpec& spec)
{
    if (spec.n_theta < 1 || spec.n_phi < 1) {
        throw std::invalid_argument("grid resolution must be positive");
    }
    GridAxes axes;
    const auto n_theta = static_cast<std::size_t>(spec.n_theta);
    axes.theta.resize(n_theta);
    axes.theta_weights.resize(n_theta);

    if (spec.spacing == ThetaSpacing::uniform) {
        const double lo = spec.pole_margin;
        const double width = (kPi - 2.0 * spec.pole_margin) / spec.n_theta;
        for (std::size_t i = 0; i < n_theta; ++i) {
            axes.theta[i] = lo + (static_cast<double>(i) + 0.5) * width;
            axes.theta_weights[i] = width;
        }
    } else {
        const auto gl = gauss_legendre(spec.n_theta);
        // Nodes are ascending in cos(theta); store theta ascending.
        for (std::size_t i = 0; i < n_theta; ++i) {
            const std::size_t src = n_theta - 1 - i;
            axes.theta[i] = std::acos(gl.nodes[src]);
            axes.theta_weights[i] = gl.weights[src];
        }
    }
    for (double theta : axes.theta) {
        require_off_pole({theta, 0.0}, spec.pole_margin);
    }

    axes.phi.resize(static_cast<std::size_t>(spec.n_phi));
    for (std::size_t j = 0; j < axes.phi.size(); ++j) {
        axes.phi[j] = 2.0 * kPi * static_cast<double>(j) / spec.n_phi;
    }
    return axes;
}

FormDensityGrid sample_form_density(const GridSpec& spec, FormKind kind, int sigma)
{
    FormDensityGrid grid;
    grid.spec = spec;
    grid.axes = make_grid_axes(spec);
    grid.kind = kind;
    grid.sigma = sigma;
    grid.values.reserve(grid.axes.theta.size() * grid.axes.phi.size());
    for (double theta : grid.axes.theta) {
        for (double phi : grid.axes.phi) {
            const auto d = circular_vector_derivatives({{theta, phi}, sigma}, spec.pole_margin);
            switch (kind) {
            case FormKind::xi:
                grid.values.push_back(xi_density(d));
                break;
            case FormKind::zeta:
                grid.values.push_back(zeta_density(d));
                break;
            case FormKind::chi:
                grid.values.push_back(chi_density(d));
                break;
            }
        }
    }
    return grid;
}

} // namespace chiral_berry
