#include "chiral_berry/quadrature.hpp"

#include "chiral_berry/polarization.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace chiral_berry {

GaussLegendre gauss_legendre(int n)
{
    if (n < 1) {
        throw std::invalid_argument("Gauss-Legendre order must be positive");
    }
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
        gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)), &gsl_integration_glfixed_table_free);
    if (!table) {
        throw std::runtime_error("gsl_integration_glfixed_table_alloc failed");
    }
    GaussLegendre gl;
    gl.nodes.resize(static_cast<std::size_t>(n));
    gl.weights.resize(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        gsl_integration_glfixed_point(-1.0, 1.0, i, &gl.nodes[i], &gl.weights[i], table.get());
    }
    // GSL orders points by symmetric pairs; sort ascending for a stable layout.
    std::vector<std::size_t> order(gl.nodes.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gl.nodes[a] < gl.nodes[b]; });
    GaussLegendre sorted;
    for (std::size_t i : order) {
        sorted.nodes.push_back(gl.nodes[i]);
        sorted.weights.push_back(gl.weights[i]);
    }
    return sorted;
}

QuadratureRule::QuadratureRule(int degree) : degree_(degree)
{
    if (degree < 0) {
        throw std::invalid_argument("quadrature degree must be non-negative");
    }
    // n-point Gauss-Legendre is exact to polynomial degree 2n - 1 in cos(theta);
    // n_phi points resolve e^{i m phi} for |m| <= degree.
    n_theta_ = degree / 2 + 1;
    n_phi_ = degree + 1;
    const auto gl = gauss_legendre(n_theta_);
    nodes_.reserve(static_cast<std::size_t>(n_theta_ * n_phi_));
    const double dphi = 2.0 * kPi / n_phi_;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double ct = gl.nodes[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int j = 0; j < n_phi_; ++j) {
            const double phi = dphi * j;
            SphereNode node;
            node.theta = std::acos(ct);
            node.phi = phi;
            node.direction = {st * std::cos(phi), st * std::sin(phi), ct};
            node.weight = gl.weights[i] * dphi;
            nodes_.push_back(node);
        }
    }
}

QuadratureRule default_rule(int l_max) { return QuadratureRule(2 * l_max + 2); }

Complex spherical_harmonic(int l, int m, double theta, double phi)
{
    if (l < 0 || std::abs(m) > l) {
        return 0.0;
    }
    const unsigned am = static_cast<unsigned>(std::abs(m));
    // std::sph_legendre already carries the normalization and (-1)^m.
    const double y = std::sph_legendre(static_cast<unsigned>(l), am, theta);
    const Complex positive = y * std::polar(1.0, static_cast<double>(am) * phi);
    if (m >= 0) {
        return positive;
    }
    return ((am % 2U) ? -1.0 : 1.0) * std::conj(positive);
}

void CompensatedSum::step(double& sum, double& comp, double v)
{
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
        comp += (sum - t) + v;
    } else {
        comp += (v - t) + sum;
    }
    sum = t;
}

void CompensatedSum::add(Complex v)
{
    step(re_, c_re_, v.real());
    step(im_, c_im_, v.imag());
}

} // namespace chiral_berry
