#pragma once

#include "chiral_berry/algebra3.hpp"

#include <vector>

namespace chiral_berry {

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

struct SphereNode {
    double theta = 0.0;
    double phi = 0.0;
    Vec3 direction{};
    double weight = 0.0;
};

/// Product rule on the photoelectron sphere: Gauss-Legendre in cos(theta)
/// times a uniform periodic trapezoid in phi. A rule of degree L integrates
/// every product Y*_lm Y_l'm' with l + l' <= L exactly; the weights sum to 4 pi.
class QuadratureRule {
public:
    explicit QuadratureRule(int degree);

    int degree() const { return degree_; }
    int n_theta() const { return n_theta_; }
    int n_phi() const { return n_phi_; }
    const std::vector<SphereNode>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }

    /// True when the rule resolves Gram products of a dipole field band-limited
    /// at l_max, i.e. degree >= 2 l_max + 1.
    bool resolves(int l_max) const { return degree_ >= 2 * l_max + 1; }

private:
    int degree_;
    int n_theta_;
    int n_phi_;
    std::vector<SphereNode> nodes_;
};

/// Default rule for a band limit: degree 2 l_max + 2.
QuadratureRule default_rule(int l_max);

/// Orthonormal complex spherical harmonic with the Condon-Shortley phase.
Complex spherical_harmonic(int l, int m, double theta, double phi);

/// Neumaier-compensated complex accumulator. Summation order is the caller's
/// loop order, so results are reproducible bit for bit.
class CompensatedSum {
public:
    void add(Complex v);
    Complex value() const { return {re_ + c_re_, im_ + c_im_}; }

private:
    static void step(double& sum, double& comp, double v);

    double re_ = 0.0;
    double im_ = 0.0;
    double c_re_ = 0.0;
    double c_im_ = 0.0;
};

} // namespace chiral_berry
