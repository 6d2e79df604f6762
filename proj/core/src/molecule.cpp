#include "chiral_berry/molecule.hpp"

#include "chiral_berry/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace chiral_berry {

HarmonicCoefficients::HarmonicCoefficients(int l_max)
    : l_max_(l_max), modes_(static_cast<std::size_t>((l_max + 1) * (l_max + 1)))
{
    if (l_max < 0) {
        throw std::invalid_argument("l_max must be non-negative");
    }
    data_.assign(3 * modes_, Complex{});
}

std::size_t HarmonicCoefficients::index(int component, int l, int m) const
{
    if (component < 0 || component > 2 || l < 0 || l > l_max_ || std::abs(m) > l) {
        throw std::out_of_range("harmonic coefficient index (" + std::to_string(component) + ", " + std::to_string(l)
                                + ", " + std::to_string(m) + ") out of range");
    }
    return static_cast<std::size_t>(component) * modes_ + static_cast<std::size_t>(l * l + l + m);
}

Complex& HarmonicCoefficients::at(int component, int l, int m) { return data_[index(component, l, m)]; }
Complex HarmonicCoefficients::at(int component, int l, int m) const { return data_[index(component, l, m)]; }

namespace {

ComplexVec3 evaluate_harmonic(const HarmonicDipoleModel& model, const Vec3& k)
{
    const auto& c = model.coefficients;
    const double theta = std::acos(std::clamp(k[2], -1.0, 1.0));
    const double phi = std::atan2(k[1], k[0]);
    ComplexVec3 d;
    for (int l = 0; l <= c.l_max(); ++l) {
        for (int m = -l; m <= l; ++m) {
            const std::size_t lm = static_cast<std::size_t>(l * l + l + m);
            const Complex c0 = c.flat(0, lm), c1 = c.flat(1, lm), c2 = c.flat(2, lm);
            if (c0 == Complex{} && c1 == Complex{} && c2 == Complex{}) {
                continue;
            }
            const Complex y = spherical_harmonic(l, m, theta, phi);
            d[0] += c0 * y;
            d[1] += c1 * y;
            d[2] += c2 * y;
        }
    }
    return d;
}

} // namespace

ComplexVec3 evaluate_dipole(const DipoleModel& model, const Vec3& direction)
{
    if (const auto* h = std::get_if<HarmonicDipoleModel>(&model)) {
        return evaluate_harmonic(*h, direction);
    }
    const auto& s = std::get<SampledDipoleModel>(model);
    return s.evaluator ? s.evaluator(direction) : ComplexVec3{};
}

int band_limit(const DipoleModel& model)
{
    if (const auto* h = std::get_if<HarmonicDipoleModel>(&model)) {
        return h->coefficients.l_max();
    }
    return std::get<SampledDipoleModel>(model).band_limit;
}

Complex spectral_amplitude(const DipoleModel& model)
{
    return std::visit([](const auto& m) { return m.spectral_amplitude; }, model);
}

DipoleModel with_spectral_amplitude(DipoleModel model, Complex amplitude)
{
    std::visit([&](auto& m) { m.spectral_amplitude = amplitude; }, model);
    return model;
}

void require_resolved(const DipoleModel& model, const QuadratureRule& rule, bool allow_under_resolved)
{
    const int l_max = band_limit(model);
    if (!allow_under_resolved && !rule.resolves(l_max)) {
        throw QuadratureUnderResolved("quadrature degree " + std::to_string(rule.degree())
                                      + " is below the exactness bound " + std::to_string(2 * l_max + 1)
                                      + " for band limit " + std::to_string(l_max));
    }
}

ComplexMatrix3 gram_tensor(const DipoleModel& model, const QuadratureRule& rule, bool allow_under_resolved)
{
    require_resolved(model, rule, allow_under_resolved);
    std::array<std::array<CompensatedSum, 3>, 3> acc{};
    for (const auto& node : rule.nodes()) {
        const auto d = evaluate_dipole(model, node.direction);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                acc[i][j].add(node.weight * std::conj(d[i]) * d[j]);
            }
        }
    }
    const double scale = std::norm(spectral_amplitude(model));
    ComplexMatrix3 q{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            q[i][j] = scale * acc[i][j].value();
        }
    }
    return q;
}

ComplexMatrix3 coefficient_gram_tensor(const HarmonicDipoleModel& model)
{
    const auto& c = model.coefficients;
    const double scale = std::norm(model.spectral_amplitude);
    ComplexMatrix3 q{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Complex sum{};
            for (std::size_t lm = 0; lm < c.modes(); ++lm) {
                sum += std::conj(c.flat(i, lm)) * c.flat(j, lm);
            }
            q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = scale * sum;
        }
    }
    return q;
}

ComplexVec3 propensity_vector(const DipoleModel& model, const QuadratureRule& rule, bool allow_under_resolved)
{
    require_resolved(model, rule, allow_under_resolved);
    std::array<CompensatedSum, 3> acc{};
    for (const auto& node : rule.nodes()) {
        const auto d = evaluate_dipole(model, node.direction);
        const auto c = cross(conj(d), d);
        for (std::size_t l = 0; l < 3; ++l) {
            acc[l].add(node.weight * c[l]);
        }
    }
    const Complex scale = Complex(0.0, 1.0) * std::norm(spectral_amplitude(model));
    return {scale * acc[0].value(), scale * acc[1].value(), scale * acc[2].value()};
}

ComplexVec3 antisymmetric_contraction(const ComplexMatrix3& q)
{
    ComplexVec3 v;
    for (int l = 0; l < 3; ++l) {
        Complex sum{};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (const int e = levi_civita(l, i, j); e != 0) {
                    sum += static_cast<double>(e) * q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                }
            }
        }
        v[static_cast<std::size_t>(l)] = Complex(0.0, 1.0) * sum;
    }
    return v;
}

SampledDipoleModel transform_model(const DipoleModel& model, const Matrix3& m)
{
    const auto mtm = transpose(m) * m;
    const auto id = identity3();
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (std::abs(mtm[i][j] - id[i][j]) > 1e-12) {
                throw NotOrthogonal("transform matrix is not orthogonal (M^T M deviates by "
                                    + std::to_string(std::abs(mtm[i][j] - id[i][j])) + ")");
            }
        }
    }
    SampledDipoleModel out;
    out.spectral_amplitude = spectral_amplitude(model);
    // Orthogonal maps preserve the harmonic degree of each term.
    out.band_limit = band_limit(model);
    out.evaluator = [base = model, m, mt = transpose(m)](const Vec3& k) {
        return m * evaluate_dipole(base, mt * k);
    };
    return out;
}

namespace models {

HarmonicDipoleModel zero(int l_max) { return {HarmonicCoefficients(l_max), {1.0, 0.0}}; }

HarmonicDipoleModel isotropic(double q)
{
    HarmonicDipoleModel model{HarmonicCoefficients(1), {1.0, 0.0}};
    const double a = std::sqrt(q);
    model.coefficients.at(0, 0, 0) = a;
    model.coefficients.at(1, 1, 0) = a;
    model.coefficients.at(2, 1, 1) = a;
    return model;
}

HarmonicDipoleModel circular_demo()
{
    HarmonicDipoleModel model{HarmonicCoefficients(0), {1.0, 0.0}};
    model.coefficients.at(0, 0, 0) = 1.0;
    model.coefficients.at(1, 0, 0) = Complex(0.0, 1.0);
    return model;
}

HarmonicDipoleModel chiral_demo()
{
    HarmonicDipoleModel model{HarmonicCoefficients(2), {1.0, 0.0}};
    auto& c = model.coefficients;
    c.at(0, 0, 0) = 1.0;
    c.at(0, 1, 1) = 0.3;
    c.at(1, 0, 0) = Complex(0.0, 1.0);
    c.at(1, 2, -1) = 0.25;
    c.at(2, 1, 0) = 0.5;
    c.at(2, 1, 1) = 0.2;
    c.at(2, 2, -1) = 0.4;
    return model;
}

HarmonicDipoleModel random_harmonic(std::uint64_t seed, int l_max)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    HarmonicDipoleModel model{HarmonicCoefficients(l_max), {1.0, 0.0}};
    for (int j = 0; j < 3; ++j) {
        for (int l = 0; l <= l_max; ++l) {
            for (int m = -l; m <= l; ++m) {
                const double re = unit(rng);
                const double im = unit(rng);
                model.coefficients.at(j, l, m) = Complex(re, im);
            }
        }
    }
    return model;
}

} // namespace models

} // namespace chiral_berry
