#include "chiral_berry/pumpprobe.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace chiral_berry {

namespace {

constexpr Complex kI{0.0, 1.0};

/// Tangent of the joint coordinates (e, eps) along one orientation angle.
struct JointTangent {
    ComplexVec3 e;
    ComplexVec3 eps;
};

Complex pair_term(const ComplexMatrix3& g, const ComplexVec3& u_left, const ComplexVec3& v_right,
                  const ComplexVec3& v_left, const ComplexVec3& u_right)
{
    // sum_ij g_ij (u_left*_i v_right_j - v_left*_i u_right_j)
    Complex sum{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            sum += g[i][j] * (std::conj(u_left[i]) * v_right[j] - std::conj(v_left[i]) * u_right[j]);
        }
    }
    return sum;
}

BlockDensity block_density(const TwoFieldState& s, const JointTangent& u, const JointTangent& v)
{
    BlockDensity d;
    d.ee = kI * pair_term(s.gram_ee, u.e, v.e, v.e, u.e);
    d.eps_eps = kI * pair_term(s.gram_eps_eps, u.eps, v.eps, v.eps, u.eps);
    d.cross = kI * (pair_term(s.gram_eps_e, u.eps, v.e, v.eps, u.e)
                    + pair_term(adjoint(s.gram_eps_e), u.e, v.eps, v.e, u.eps));
    return d;
}

Complex pulled(const SplitConnection& a, const JointTangent& t) { return dot(a.a_e, t.e) + dot(a.a_eps, t.eps); }

} // namespace

void TwoFieldConfiguration::validate() const
{
    if (circular.point.theta != linear.point.theta || circular.point.phi != linear.point.phi) {
        throw std::invalid_argument("circular and linear fields must share one molecular orientation");
    }
}

TwoFieldConfiguration make_two_field(OrientationPoint p, int sigma, double alpha, Complex coupling)
{
    return {{p, sigma}, {p, alpha}, coupling};
}

TwoFieldAmplitude TwoPhotonAmplitudeModel::evaluate(const ComplexVec3& continuum_dipole, const ComplexVec3& e,
                                                    const ComplexVec3& eps, Complex coupling) const
{
    TwoFieldAmplitude a;
    if (ordering == FieldOrdering::linear_first) {
        const Complex ionize = dot(continuum_dipole, e);
        const Complex excite = dot(bound_dipole, eps);
        a.value = -coupling * ionize * excite;
        a.grad_e = -coupling * excite * continuum_dipole;
        a.grad_eps = -coupling * ionize * bound_dipole;
    } else {
        const Complex ionize = dot(continuum_dipole, eps);
        const Complex excite = dot(bound_dipole, e);
        a.value = -coupling * ionize * excite;
        a.grad_e = -coupling * ionize * bound_dipole;
        a.grad_eps = -coupling * excite * continuum_dipole;
    }
    return a;
}

TwoFieldAmplitudeProvider TwoPhotonAmplitudeModel::provider(Complex coupling) const
{
    return [self = *this, coupling](const ComplexVec3& d, const ComplexVec3& e, const ComplexVec3& eps) {
        return self.evaluate(d, e, eps, coupling);
    };
}

PumpProbeGeometry::PumpProbeGeometry(TwoPhotonAmplitudeModel model, const QuadratureRule& rule, Complex coupling,
                                     bool allow_under_resolved, double pole_margin)
    : PumpProbeGeometry(model.provider(coupling), model.continuum, rule, allow_under_resolved, pole_margin)
{
}

PumpProbeGeometry::PumpProbeGeometry(TwoFieldAmplitudeProvider provider, const DipoleModel& continuum,
                                     const QuadratureRule& rule, bool allow_under_resolved, double pole_margin)
    : provider_(std::move(provider)), pole_margin_(pole_margin)
{
    require_resolved(continuum, rule, allow_under_resolved);
    weights_.reserve(rule.size());
    dipoles_.reserve(rule.size());
    for (const auto& node : rule.nodes()) {
        weights_.push_back(node.weight);
        dipoles_.push_back(evaluate_dipole(continuum, node.direction));
    }
}

TwoFieldState PumpProbeGeometry::state(const ComplexVec3& e, const ComplexVec3& eps) const
{
    std::array<CompensatedSum, 3> a_e{}, a_eps{};
    std::array<std::array<CompensatedSum, 3>, 3> g_ee{}, g_pp{}, g_pe{};
    for (std::size_t k = 0; k < dipoles_.size(); ++k) {
        const auto amp = provider_(dipoles_[k], e, eps);
        const double w = weights_[k];
        const Complex wa = w * std::conj(amp.value);
        for (std::size_t i = 0; i < 3; ++i) {
            a_e[i].add(wa * amp.grad_e[i]);
            a_eps[i].add(wa * amp.grad_eps[i]);
            for (std::size_t j = 0; j < 3; ++j) {
                g_ee[i][j].add(w * std::conj(amp.grad_e[i]) * amp.grad_e[j]);
                g_pp[i][j].add(w * std::conj(amp.grad_eps[i]) * amp.grad_eps[j]);
                g_pe[i][j].add(w * std::conj(amp.grad_eps[i]) * amp.grad_e[j]);
            }
        }
    }
    TwoFieldState s;
    for (std::size_t i = 0; i < 3; ++i) {
        s.connection.a_e[i] = kI * a_e[i].value();
        s.connection.a_eps[i] = kI * a_eps[i].value();
        for (std::size_t j = 0; j < 3; ++j) {
            s.gram_ee[i][j] = g_ee[i][j].value();
            s.gram_eps_eps[i][j] = g_pp[i][j].value();
            s.gram_eps_e[i][j] = g_pe[i][j].value();
        }
    }
    return s;
}

SplitConnection PumpProbeGeometry::split_connection(const TwoFieldConfiguration& config) const
{
    config.validate();
    return state(circular_vector(config.circular, pole_margin_), linear_vector(config.linear, pole_margin_))
        .connection;
}

CurvatureBlocks PumpProbeGeometry::curvature_blocks(const TwoFieldConfiguration& config) const
{
    config.validate();
    const auto s =
        state(circular_vector(config.circular, pole_margin_), linear_vector(config.linear, pole_margin_));
    CurvatureBlocks b;
    b.omega_e = antisymmetric_contraction(s.gram_ee);
    b.omega_eps = antisymmetric_contraction(s.gram_eps_eps);
    b.cross_tensor = s.gram_eps_e;
    // antisymmetric_contraction carries a factor i; the cross vector does not.
    b.cross_vector = antisymmetric_contraction(s.gram_eps_e) / kI;
    return b;
}

PumpProbePullback PumpProbeGeometry::pullback(const TwoFieldConfiguration& config) const
{
    config.validate();
    const auto e = circular_vector(config.circular, pole_margin_);
    const auto de = circular_vector_derivatives(config.circular, pole_margin_);
    const auto eps = linear_vector(config.linear, pole_margin_);
    const auto deps = linear_vector_derivatives(config.linear, pole_margin_);
    const auto s = state(e, eps);

    const JointTangent t_theta{de.d_theta, deps.d_theta};
    const JointTangent t_phi{de.d_phi, deps.d_phi};
    const JointTangent t_alpha{{}, deps.d_alpha};

    PumpProbePullback p;
    p.a_theta_e = dot(s.connection.a_e, de.d_theta);
    p.a_theta_eps = dot(s.connection.a_eps, deps.d_theta);
    p.a_phi_e = dot(s.connection.a_e, de.d_phi);
    p.a_phi_eps = dot(s.connection.a_eps, deps.d_phi);
    p.a_alpha_eps = pulled(s.connection, t_alpha);
    p.theta_phi = block_density(s, t_theta, t_phi);
    p.theta_alpha = block_density(s, t_theta, t_alpha);
    p.phi_alpha = block_density(s, t_phi, t_alpha);
    return p;
}

TwoFieldLoopPhase PumpProbeGeometry::loop_phase(const LoopPath& path, int sigma, double alpha) const
{
    const auto& pts = path.points();
    CompensatedSum circ, lin;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const auto p0 = pullback(make_two_field(pts[k], sigma, alpha));
        const auto p1 = pullback(make_two_field(pts[k + 1], sigma, alpha));
        const double dt = pts[k + 1].theta - pts[k].theta;
        const double dp = pts[k + 1].phi - pts[k].phi;
        circ.add(0.5 * ((p0.a_theta_e + p1.a_theta_e) * dt + (p0.a_phi_e + p1.a_phi_e) * dp));
        lin.add(0.5 * ((p0.a_theta_eps + p1.a_theta_eps) * dt + (p0.a_phi_eps + p1.a_phi_eps) * dp));
    }
    auto wrap = [](Complex v) { return LoopPhase{v.real(), principal_value(v.real()), v.imag()}; };
    const Complex c = circ.value(), l = lin.value();
    return {wrap(c), wrap(l), wrap(c + l)};
}

double PumpProbeGeometry::exterior_derivative_check(const TwoFieldConfiguration& config, double fd_step) const
{
    config.validate();
    const double h = fd_step;
    const auto p = config.circular.point;
    auto at = [&](double theta, double phi) {
        return pullback({{{theta, phi}, config.circular.sigma}, {{theta, phi}, config.linear.alpha}, config.coupling});
    };
    auto a_phi = [&](double theta, double phi) {
        const auto pb = at(theta, phi);
        return pb.a_phi_e + pb.a_phi_eps;
    };
    auto a_theta = [&](double theta, double phi) {
        const auto pb = at(theta, phi);
        return pb.a_theta_e + pb.a_theta_eps;
    };
    const Complex d_theta_a_phi = (a_phi(p.theta + h, p.phi) - a_phi(p.theta - h, p.phi)) / (2.0 * h);
    const Complex d_phi_a_theta = (a_theta(p.theta, p.phi + h) - a_theta(p.theta, p.phi - h)) / (2.0 * h);
    return std::abs(d_theta_a_phi - d_phi_a_theta - pullback(config).theta_phi.total());
}

SplitConnection split_connection(const TwoPhotonAmplitudeModel& model, const QuadratureRule& rule,
                                 const TwoFieldConfiguration& config)
{
    return PumpProbeGeometry(model, rule, config.coupling).split_connection(config);
}

CurvatureBlocks curvature_blocks(const TwoPhotonAmplitudeModel& model, const QuadratureRule& rule,
                                 const TwoFieldConfiguration& config)
{
    return PumpProbeGeometry(model, rule, config.coupling).curvature_blocks(config);
}

double linear_coupling(const TwoPhotonAmplitudeModel& model, const TwoFieldConfiguration& config)
{
    const auto eps = linear_vector(config.linear);
    return std::norm(config.coupling) * std::norm(dot(model.bound_dipole, eps));
}

double one_field_reduction_check(const TwoPhotonAmplitudeModel& model, const QuadratureRule& rule,
                                 const TwoFieldConfiguration& config)
{
    if (model.ordering != FieldOrdering::linear_first) {
        throw std::invalid_argument("one-field reduction needs the circular field to drive ionization");
    }
    const auto blocks = curvature_blocks(model, rule, config);
    const double c = linear_coupling(model, config);
    if (c == 0.0) {
        return max_abs(blocks.omega_e);
    }
    const auto one_field = curvature_tensor(with_spectral_amplitude(model.continuum, 1.0), rule).antisym_vector;
    return max_abs(blocks.omega_e / c - one_field);
}

} // namespace chiral_berry
