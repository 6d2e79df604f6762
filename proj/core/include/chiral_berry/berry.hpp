#pragma once

#include "chiral_berry/algebra3.hpp"
#include "chiral_berry/molecule.hpp"
#include "chiral_berry/polarization.hpp"
#include "chiral_berry/quadrature.hpp"

#include <vector>

namespace chiral_berry {

/// Gram tensor Q_ij = <d_{e_i} psi | d_{e_j} psi> of the one-photon state and
/// its split into the three index classes, each scaled by i:
///   antisym_vector_l  = i eps_lij Q_ij     (pairs with d xi)
///   diamond_vector_l  = i |eps_lij| Q_ij   (pairs with d zeta)
///   diagonal_vector_l = i Q_ll             (pairs with d chi)
/// antisym_vector is the propensity pseudovector.
struct CurvatureTensor {
    ComplexMatrix3 gram{};
    ComplexVec3 antisym_vector;
    ComplexVec3 diamond_vector;
    ComplexVec3 diagonal_vector;
};

CurvatureTensor decompose(const ComplexMatrix3& gram);

/// Rebuilds Q from the three channel vectors alone.
ComplexMatrix3 reconstruct_gram(const CurvatureTensor& t);

CurvatureTensor curvature_tensor(const DipoleModel& model, const QuadratureRule& rule,
                                 bool allow_under_resolved = false);

/// Connection at one orientation. a_vec_j = i <psi|d_{e_j} psi> = i e*_i Q_ij;
/// the pullback components contract it with the analytic de/d theta, de/d phi.
struct ConnectionSample {
    OrientationPoint point;
    Complex a_theta;
    Complex a_phi;
    ComplexVec3 a_vec;
};

/// Per-channel contributions to the d theta ^ d phi curvature coefficient.
struct DensityChannels {
    Complex xi;
    Complex zeta;
    Complex chi;

    Complex total() const { return xi + zeta + chi; }
};

/// i Q_ij W_ij with W the wedge coefficients; independent of the channel split.
Complex wedge_contraction_density(const ComplexMatrix3& gram, const AngularDerivatives& d);

/// Closed polyline on the orientation sphere.
class LoopPath {
public:
    /// Throws OpenPath if first and last points differ (phi compared modulo
    /// 2 pi), PoleSingularity if any point violates the margin.
    explicit LoopPath(std::vector<OrientationPoint> points, double pole_margin = kDefaultPoleMargin);

    /// theta = theta0, phi from phi0 to phi0 + 2 pi (or the reverse).
    static LoopPath latitude_circle(double theta0, int segments = 720, bool counter_clockwise = true,
                                    double phi0 = 0.0, double pole_margin = kDefaultPoleMargin);

    const std::vector<OrientationPoint>& points() const { return points_; }
    bool is_latitude_circle() const { return latitude_; }
    LoopPath reversed() const;

private:
    std::vector<OrientationPoint> points_;
    bool latitude_ = false;
};

struct LoopPhase {
    double raw = 0.0;
    /// raw reduced to (-pi, pi].
    double principal = 0.0;
    /// Imaginary part of the line integral. The imaginary part of the
    /// unnormalized connection is exact, so this vanishes on closed loops.
    double imaginary_residual = 0.0;
};

double principal_value(double phase);

struct StokesReport {
    /// loop(theta2) - loop(theta1)
    double boundary = 0.0;
    /// integral of the curvature density over the annulus
    double surface = 0.0;
    double residual = 0.0;
};

struct StokesOptions {
    int n_theta = 256;
    int n_phi = 256;
    int loop_segments = 720;
};

/// Model-bound evaluator. The Gram tensor is computed once at construction;
/// every query afterwards is a pure function of its arguments.
class BerryGeometry {
public:
    BerryGeometry(const DipoleModel& model, const QuadratureRule& rule, bool allow_under_resolved = false,
                  double pole_margin = kDefaultPoleMargin);
    explicit BerryGeometry(const ComplexMatrix3& gram, double pole_margin = kDefaultPoleMargin);

    const CurvatureTensor& curvature() const { return tensor_; }
    double pole_margin() const { return pole_margin_; }

    ConnectionSample connection_at(const CircularPolarization& cp) const;

    /// Coefficient of d theta ^ d phi assembled from the (xi, zeta, chi) channels.
    Complex curvature_density(OrientationPoint p, int sigma) const;
    DensityChannels channel_densities(OrientationPoint p, int sigma) const;
    /// Same coefficient by direct wedge contraction.
    Complex direct_density(OrientationPoint p, int sigma) const;

    /// |d_theta A_phi - d_phi A_theta - density| with central differences.
    double exterior_derivative_check(OrientationPoint p, int sigma, double fd_step) const;

    /// Composite-trapezoid integral of A_theta d theta + A_phi d phi.
    LoopPhase loop_phase(const LoopPath& path, int sigma) const;
    /// Same integral over an open polyline, no closure check.
    Complex line_integral(const std::vector<OrientationPoint>& points, int sigma) const;

    /// Compares two latitude loops with the annulus integral between them.
    StokesReport stokes_check(double theta1, double theta2, int sigma, const StokesOptions& options = {}) const;

private:
    CurvatureTensor tensor_;
    double pole_margin_;
};

// One-shot forms that build the Gram tensor per call.
ConnectionSample connection_at(const DipoleModel& model, const QuadratureRule& rule, const CircularPolarization& cp);
Complex curvature_density(const DipoleModel& model, const QuadratureRule& rule, OrientationPoint p, int sigma);
double exterior_derivative_check(const DipoleModel& model, const QuadratureRule& rule, OrientationPoint p, int sigma,
                                 double fd_step);
LoopPhase loop_phase(const DipoleModel& model, const QuadratureRule& rule, const LoopPath& path, int sigma);
StokesReport stokes_check(const DipoleModel& model, const QuadratureRule& rule, double theta1, double theta2,
                          int sigma, const StokesOptions& options = {});

enum class AmplitudeKind {
    /// a_k(e) = -E (D(k) . e)
    holomorphic,
    /// a_k(e) = -E (D(k) . e*); negative control for the holomorphy check.
    antiholomorphic_control,
};

/// First-order continuum amplitude bound to a dipole model.
class AmplitudeField {
public:
    explicit AmplitudeField(DipoleModel model, AmplitudeKind kind = AmplitudeKind::holomorphic);

    Complex amplitude(const Vec3& direction, const ComplexVec3& e) const;
    /// Analytic Wirtinger gradients.
    ComplexVec3 gradient_e(const Vec3& direction) const;
    ComplexVec3 gradient_e_conj(const Vec3& direction) const;

    const DipoleModel& model() const { return model_; }
    AmplitudeKind kind() const { return kind_; }

private:
    DipoleModel model_;
    AmplitudeKind kind_;
};

/// Max over components and sample directions of |(d_Re e_i + i d_Im e_i) a| / 2,
/// by central differences in the ambient e-space around e(point, sigma).
double holomorphy_check(const AmplitudeField& field, OrientationPoint p, int sigma, double fd_step);
double holomorphy_check(const DipoleModel& model, OrientationPoint p, int sigma, double fd_step);

} // namespace chiral_berry
