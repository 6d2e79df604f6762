#pragma once

#include "chiral_berry/algebra3.hpp"

#include <vector>

namespace chiral_berry {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultPoleMargin = 1e-3;

/// Molecular orientation (theta, phi) on the unit sphere, radians. phi is
/// not reduced; frames are 2pi-periodic in it, so loops may run phi past 2pi.
struct OrientationPoint {
    double theta = 0.0;
    double phi = 0.0;
};

/// Throws PoleSingularity unless margin < theta < pi - margin.
void require_off_pole(OrientationPoint p, double pole_margin = kDefaultPoleMargin);

/// Right-handed orthonormal triad with theta_hat x phi_hat = r_hat. Components
/// are real but stored complex so they mix freely with polarization vectors.
struct SphericalFrame {
    ComplexVec3 r;
    ComplexVec3 theta;
    ComplexVec3 phi;
};

SphericalFrame spherical_frame(OrientationPoint p, double pole_margin = kDefaultPoleMargin);

/// e = (theta_hat + i sigma phi_hat) / sqrt(2), sigma = +-1.
struct CircularPolarization {
    OrientationPoint point;
    int sigma = 1;
};

/// eps = cos(alpha) theta_hat + sin(alpha) phi_hat.
struct LinearPolarization {
    OrientationPoint point;
    double alpha = 0.0;
};

/// Partial derivatives of a polarization vector along the orientation angles.
struct AngularDerivatives {
    ComplexVec3 d_theta;
    ComplexVec3 d_phi;
};

struct LinearDerivatives {
    ComplexVec3 d_theta;
    ComplexVec3 d_phi;
    ComplexVec3 d_alpha;
};

ComplexVec3 circular_vector(const CircularPolarization& cp, double pole_margin = kDefaultPoleMargin);

/// Analytic derivatives from d theta_hat/d theta = -r_hat and
/// d phi_hat/d phi = -(sin(theta) r_hat + cos(theta) theta_hat).
AngularDerivatives circular_vector_derivatives(const CircularPolarization& cp,
                                               double pole_margin = kDefaultPoleMargin);

ComplexVec3 linear_vector(const LinearPolarization& lp, double pole_margin = kDefaultPoleMargin);
LinearDerivatives linear_vector_derivatives(const LinearPolarization& lp, double pole_margin = kDefaultPoleMargin);

/// (1/2i) e* x e. For a circular vector this is (sigma/2) r_hat, half the
/// length of a point on the unit sphere.
ComplexVec3 projection_map(const ComplexVec3& e);

/// projection_map rescaled to unit length. Throws std::domain_error when the
/// projection vanishes (linear polarization).
ComplexVec3 normalized_projection(const ComplexVec3& e);

/// W_ij = d_theta e*_i d_phi e_j - d_phi e*_i d_theta e_j, the d theta ^ d phi
/// coefficient of de*_i ^ de_j.
ComplexMatrix3 wedge_coefficients(const AngularDerivatives& d);

// Coefficients of d theta ^ d phi in the polarization 2-forms. The overloads
// taking derivatives work for any parametrized polarization vector.
ComplexVec3 xi_density(const AngularDerivatives& d);
ComplexVec3 zeta_density(const AngularDerivatives& d);
ComplexVec3 chi_density(const AngularDerivatives& d);

ComplexVec3 xi_density(OrientationPoint p, int sigma, double pole_margin = kDefaultPoleMargin);
ComplexVec3 zeta_density(OrientationPoint p, int sigma, double pole_margin = kDefaultPoleMargin);
ComplexVec3 chi_density(OrientationPoint p, int sigma, double pole_margin = kDefaultPoleMargin);

enum class FormKind { xi, zeta, chi };

const char* form_name(FormKind kind);

enum class ThetaSpacing {
    /// Cell-centred uniform theta between the pole margins (plots).
    uniform,
    /// Gauss-Legendre nodes in cos(theta) (surface integrals).
    gauss_legendre,
};

struct GridSpec {
    int n_theta = 32;
    int n_phi = 64;
    double pole_margin = kDefaultPoleMargin;
    ThetaSpacing spacing = ThetaSpacing::uniform;
};

/// Nodes of a (theta, phi) grid. theta_weights are the d(cos theta) weights
/// for Gauss-Legendre spacing and the midpoint widths for uniform spacing.
struct GridAxes {
    std::vector<double> theta;
    std::vector<double> theta_weights;
    std::vector<double> phi;
};

/// Throws PoleSingularity if any node falls inside the pole margin.
GridAxes make_grid_axes(const GridSpec& spec);

/// Vector-valued 2-form density sampled on a grid, theta-major.
struct FormDensityGrid {
    GridSpec spec;
    GridAxes axes;
    FormKind kind = FormKind::xi;
    int sigma = 1;
    std::vector<ComplexVec3> values;

    const ComplexVec3& at(std::size_t i_theta, std::size_t i_phi) const
    {
        return values[i_theta * axes.phi.size() + i_phi];
    }
};

FormDensityGrid sample_form_density(const GridSpec& spec, FormKind kind, int sigma);

} // namespace chiral_berry
