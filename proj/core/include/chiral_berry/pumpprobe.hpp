#pragma once

#include "chiral_berry/algebra3.hpp"
#include "chiral_berry/berry.hpp"
#include "chiral_berry/molecule.hpp"
#include "chiral_berry/polarization.hpp"
#include "chiral_berry/quadrature.hpp"

#include <functional>
#include <vector>

namespace chiral_berry {

/// Circular field e and linear field eps anchored at one molecular orientation.
struct TwoFieldConfiguration {
    CircularPolarization circular;
    LinearPolarization linear;
    /// Product G of the two fields' spectral amplitudes.
    Complex coupling{1.0, 0.0};

    /// Throws std::invalid_argument if the two fields sit at different points.
    void validate() const;
};

/// Two-field configuration at one point.
TwoFieldConfiguration make_two_field(OrientationPoint p, int sigma, double alpha, Complex coupling = 1.0);

enum class FieldOrdering {
    /// Linear field drives the bound-bound step, circular field ionizes:
    /// a = -G (D . e)(d . eps).
    linear_first,
    /// Circular field drives the bound-bound step: a = -G (D . eps)(d . e).
    circular_first,
};

/// Amplitude and its holomorphic gradients at one photoelectron direction.
struct TwoFieldAmplitude {
    Complex value;
    ComplexVec3 grad_e;
    ComplexVec3 grad_eps;
};

/// Anything that maps (continuum dipole at a node, e, eps) to an amplitude.
using TwoFieldAmplitudeProvider =
    std::function<TwoFieldAmplitude(const ComplexVec3& continuum_dipole, const ComplexVec3& e, const ComplexVec3& eps)>;

/// Factorized two-photon amplitude: a continuum step through D(k) and a
/// bound-bound step through d.
struct TwoPhotonAmplitudeModel {
    DipoleModel continuum;
    ComplexVec3 bound_dipole;
    FieldOrdering ordering = FieldOrdering::linear_first;

    TwoFieldAmplitude evaluate(const ComplexVec3& continuum_dipole, const ComplexVec3& e, const ComplexVec3& eps,
                               Complex coupling) const;
    TwoFieldAmplitudeProvider provider(Complex coupling) const;
};

/// A_e = i <psi|grad_e psi>, A_eps = i <psi|grad_eps psi>.
struct SplitConnection {
    ComplexVec3 a_e;
    ComplexVec3 a_eps;
};

/// Orbital-antisymmetric curvature blocks of the joint (e, eps) manifold.
struct CurvatureBlocks {
    /// i <grad_e psi| x |grad_e psi>
    ComplexVec3 omega_e;
    /// i <grad_eps psi| x |grad_eps psi>
    ComplexVec3 omega_eps;
    /// <d_{eps_i} psi | d_{e_j} psi>
    ComplexMatrix3 cross_tensor{};
    /// eps_nij cross_tensor_ij = <grad_eps psi| x |grad_e psi>
    ComplexVec3 cross_vector;
};

/// Quadrature results for one (e, eps): connection vectors and the Gram
/// blocks <d_I psi | d_J psi> of the six holomorphic coordinates.
struct TwoFieldState {
    SplitConnection connection;
    ComplexMatrix3 gram_ee{};
    ComplexMatrix3 gram_eps_eps{};
    ComplexMatrix3 gram_eps_e{};
};

/// d theta ^ d phi (or an anisotropic pair) coefficient split by block.
struct BlockDensity {
    Complex ee;
    Complex eps_eps;
    Complex cross;

    Complex total() const { return ee + eps_eps + cross; }
};

/// Pullback of the two-field connection and curvature onto the orientation
/// angles. Pairs involving alpha break cylindrical symmetry and are reported
/// separately as the anisotropic channel.
struct PumpProbePullback {
    Complex a_theta_e;
    Complex a_theta_eps;
    Complex a_phi_e;
    Complex a_phi_eps;
    /// Only the linear field depends on alpha.
    Complex a_alpha_eps;
    BlockDensity theta_phi;
    BlockDensity theta_alpha;
    BlockDensity phi_alpha;
};

struct TwoFieldLoopPhase {
    LoopPhase circular;
    LoopPhase linear;
    LoopPhase total;
};

/// Model-bound evaluator; continuum dipoles are cached at the quadrature nodes.
class PumpProbeGeometry {
public:
    PumpProbeGeometry(TwoPhotonAmplitudeModel model, const QuadratureRule& rule, Complex coupling,
                      bool allow_under_resolved = false, double pole_margin = kDefaultPoleMargin);
    /// Arbitrary amplitude provider over a dipole model's node values.
    PumpProbeGeometry(TwoFieldAmplitudeProvider provider, const DipoleModel& continuum, const QuadratureRule& rule,
                      bool allow_under_resolved = false, double pole_margin = kDefaultPoleMargin);

    TwoFieldState state(const ComplexVec3& e, const ComplexVec3& eps) const;

    SplitConnection split_connection(const TwoFieldConfiguration& config) const;
    CurvatureBlocks curvature_blocks(const TwoFieldConfiguration& config) const;
    PumpProbePullback pullback(const TwoFieldConfiguration& config) const;

    /// Loop over (theta, phi) with sigma and alpha held fixed.
    TwoFieldLoopPhase loop_phase(const LoopPath& path, int sigma, double alpha) const;

    /// |d_theta A_phi - d_phi A_theta - density| for the summed connection.
    double exterior_derivative_check(const TwoFieldConfiguration& config, double fd_step) const;

private:
    TwoFieldAmplitudeProvider provider_;
    std::vector<double> weights_;
    std::vector<ComplexVec3> dipoles_;
    double pole_margin_;
};

SplitConnection split_connection(const TwoPhotonAmplitudeModel& model, const QuadratureRule& rule,
                                 const TwoFieldConfiguration& config);
CurvatureBlocks curvature_blocks(const TwoPhotonAmplitudeModel& model, const QuadratureRule& rule,
                                 const TwoFieldConfiguration& config);

/// Linear coupling |G|^2 |d . eps|^2 that scales the circular block of the
/// linear-first factorized amplitude.
double linear_coupling(const TwoPhotonAmplitudeModel& model, const TwoFieldConfiguration& config);

/// |omega_e / coupling - antisym_vector(one-field model at |E| = 1)|, or
/// |omega_e| when the coupling vanishes. Requires linear_first ordering.
double one_field_reduction_check(const TwoPhotonAmplitudeModel& model, const QuadratureRule& rule,
                                 const TwoFieldConfiguration& config);

} // namespace chiral_berry
