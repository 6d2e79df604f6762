#pragma once

#include "chiral_berry/molecule.hpp"
#include "chiral_berry/polarization.hpp"
#include "chiral_berry/pumpprobe.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chiral_berry::cli {

/// Malformed or invalid configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ModelKind { harmonic, isotropic, circular_demo, chiral_demo, random, zero };

struct CoefficientEntry {
    int component = 0;
    int l = 0;
    int m = 0;
    Complex value;
};

struct ModelSpec {
    ModelKind kind = ModelKind::chiral_demo;
    /// Isotropic Gram scale.
    double q = 1.0;
    /// Band limit for harmonic, random and zero models.
    int l_max = 0;
    std::vector<CoefficientEntry> coefficients;
    Complex spectral_amplitude{1.0, 0.0};
    std::optional<Matrix3> transform;
};

struct SecondFieldSpec {
    ComplexVec3 bound_dipole{0.0, 0.0, 1.0};
    double alpha = 0.0;
    Complex coupling{1.0, 0.0};
    FieldOrdering ordering = FieldOrdering::linear_first;
};

struct FieldSpec {
    int sigma = 1;
    std::optional<SecondFieldSpec> second;
};

struct LoopSpec {
    enum class Kind { latitude, point, polyline };
    Kind kind = Kind::latitude;
    /// One entry per latitude loop; several entries make a sweep.
    std::vector<double> theta0{kPi / 3.0};
    int segments = 720;
    OrientationPoint point{kPi / 2.0, 0.0};
    std::vector<OrientationPoint> points;
};

struct AnnulusSpec {
    double theta1 = kPi / 4.0;
    double theta2 = kPi / 2.0;
    int n_theta = 256;
    int n_phi = 256;
};

/// Fully resolved run configuration.
struct RunConfig {
    ModelSpec model;
    FieldSpec field;
    GridSpec grid{32, 64, kDefaultPoleMargin, ThetaSpacing::uniform};
    /// 0 selects the default degree 2 l_max + 2.
    int quadrature_degree = 0;
    bool allow_under_resolved = false;
    LoopSpec loop;
    std::optional<AnnulusSpec> annulus;
    /// Orientation at which point-wise pump-probe quantities are reported.
    OrientationPoint probe_point{1.0, 0.7};
    std::string output_dir = "chiral_berry_out";
    std::uint64_t seed = 0;
    bool anti_holomorphic_amplitude = false;
    /// The document as read, with the effective seed written back. Its dump is
    /// the canonical form hashed into the manifest.
    nlohmann::json document;
};

RunConfig parse_config(const nlohmann::json& doc);
/// Throws ConfigError on unreadable files or invalid JSON.
RunConfig load_config(const std::filesystem::path& path);

/// Builds the dipole model, applying the optional transform.
DipoleModel build_model(const RunConfig& config);
/// Untransformed model (reference for pseudovector reports).
DipoleModel build_base_model(const RunConfig& config);
QuadratureRule build_rule(const RunConfig& config);
TwoPhotonAmplitudeModel build_two_photon(const RunConfig& config, const DipoleModel& continuum);

} // namespace chiral_berry::cli
