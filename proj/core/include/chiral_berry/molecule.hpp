#pragma once

#include "chiral_berry/algebra3.hpp"
#include "chiral_berry/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

namespace chiral_berry {

/// Dense table c[j][l][m] for Cartesian component j, degree l <= l_max and
/// order |m| <= l.
class HarmonicCoefficients {
public:
    explicit HarmonicCoefficients(int l_max = 0);

    int l_max() const { return l_max_; }

    Complex& at(int component, int l, int m);
    Complex at(int component, int l, int m) const;

    /// Flat access over the (l, m) index l*l + l + m.
    std::size_t modes() const { return modes_; }
    Complex flat(int component, std::size_t lm) const { return data_[static_cast<std::size_t>(component) * modes_ + lm]; }

private:
    std::size_t index(int component, int l, int m) const;

    int l_max_;
    std::size_t modes_;
    std::vector<Complex> data_;
};

/// D_j(k) = sum_lm c[j][l][m] Y_lm(k).
struct HarmonicDipoleModel {
    HarmonicCoefficients coefficients;
    /// Spectral amplitude of the field at the transition frequency.
    Complex spectral_amplitude{1.0, 0.0};
};

/// Dipole field given by an evaluator on unit directions. band_limit is the
/// highest spherical-harmonic degree the evaluator contains; quadrature
/// exactness is judged against it.
struct SampledDipoleModel {
    std::function<ComplexVec3(const Vec3&)> evaluator;
    Complex spectral_amplitude{1.0, 0.0};
    int band_limit = 0;
};

using DipoleModel = std::variant<HarmonicDipoleModel, SampledDipoleModel>;

ComplexVec3 evaluate_dipole(const DipoleModel& model, const Vec3& direction);
int band_limit(const DipoleModel& model);
Complex spectral_amplitude(const DipoleModel& model);
DipoleModel with_spectral_amplitude(DipoleModel model, Complex amplitude);

/// Throws QuadratureUnderResolved unless the rule resolves the model's band
/// limit or the override is set.
void require_resolved(const DipoleModel& model, const QuadratureRule& rule, bool allow_under_resolved);

/// Q_ij = |E|^2 \int dTheta D_i* D_j by quadrature. Hermitian PSD.
ComplexMatrix3 gram_tensor(const DipoleModel& model, const QuadratureRule& rule, bool allow_under_resolved = false);

/// Closed form |E|^2 sum_lm c[i][l][m]* c[j][l][m] from orthonormality.
ComplexMatrix3 coefficient_gram_tensor(const HarmonicDipoleModel& model);

/// i |E|^2 \int dTheta D* x D, accumulated directly from the cross product.
ComplexVec3 propensity_vector(const DipoleModel& model, const QuadratureRule& rule, bool allow_under_resolved = false);

/// i eps_lij Q_ij.
ComplexVec3 antisymmetric_contraction(const ComplexMatrix3& q);

/// D'(k) = M D(M^T k). Throws NotOrthogonal if |M^T M - 1| > 1e-12.
SampledDipoleModel transform_model(const DipoleModel& model, const Matrix3& m);

/// Constructors for the shipped models.
namespace models {

/// All coefficients zero.
HarmonicDipoleModel zero(int l_max = 0);

/// Q = q * identity: each component on a distinct orthonormal harmonic.
HarmonicDipoleModel isotropic(double q = 1.0);

/// D_x = Y_00, D_y = i Y_00, D_z = 0. Propensity (0, 0, -2).
HarmonicDipoleModel circular_demo();

/// circular_demo plus real l = 1, 2 admixtures. Exercises every Gram
/// channel while keeping the propensity at (0, 0, -2).
HarmonicDipoleModel chiral_demo();

/// Seeded complex coefficients, each part uniform in [-1, 1).
HarmonicDipoleModel random_harmonic(std::uint64_t seed, int l_max);

} // namespace models

} // namespace chiral_berry
