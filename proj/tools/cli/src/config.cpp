#include "chiral_berry/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace chiral_berry::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

const json& require_object(const json& j, const std::string& where)
{
    if (!j.is_object()) {
        throw ConfigError(where + " must be a JSON object");
    }
    return j;
}

double as_number(const json& j, const std::string& where)
{
    if (!j.is_number()) {
        throw ConfigError(where + " must be a number");
    }
    return j.get<double>();
}

int as_int(const json& j, const std::string& where)
{
    if (!j.is_number_integer()) {
        throw ConfigError(where + " must be an integer");
    }
    return j.get<int>();
}

/// Radians by default; {"value": v, "unit": "deg" | "rad"} for explicit units.
double as_angle(const json& j, const std::string& where)
{
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_object()) {
        reject_unknown(j, {"value", "unit"}, where);
        if (!j.contains("value") || !j.contains("unit")) {
            throw ConfigError(where + " needs both 'value' and 'unit'");
        }
        const double v = as_number(j.at("value"), where + ".value");
        const auto unit = j.at("unit").get<std::string>();
        if (unit == "rad") {
            return v;
        }
        if (unit == "deg") {
            return v * kPi / 180.0;
        }
        throw ConfigError(where + ".unit must be 'deg' or 'rad'");
    }
    throw ConfigError(where + " must be a number (radians) or {value, unit}");
}

Complex as_complex(const json& j, const std::string& where)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2) {
        return {as_number(j[0], where + "[0]"), as_number(j[1], where + "[1]")};
    }
    if (j.is_object()) {
        reject_unknown(j, {"re", "im"}, where);
        return {j.contains("re") ? as_number(j.at("re"), where + ".re") : 0.0,
                j.contains("im") ? as_number(j.at("im"), where + ".im") : 0.0};
    }
    throw ConfigError(where + " must be a number, [re, im] or {re, im}");
}

int as_component(const json& j, const std::string& where)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "x") return 0;
        if (s == "y") return 1;
        if (s == "z") return 2;
    } else if (j.is_number_integer()) {
        const int c = j.get<int>();
        if (c >= 0 && c <= 2) return c;
    }
    throw ConfigError(where + " must be one of x, y, z (or 0, 1, 2)");
}

int as_resolution(const json& j, const std::string& where)
{
    const int n = as_int(j, where);
    if (n < 8) {
        throw ConfigError(where + " must be at least 8, got " + std::to_string(n));
    }
    return n;
}

OrientationPoint as_point(const json& j, const std::string& where)
{
    if (j.is_array() && j.size() == 2) {
        return {as_angle(j[0], where + "[0]"), as_angle(j[1], where + "[1]")};
    }
    require_object(j, where);
    reject_unknown(j, {"theta", "phi"}, where);
    if (!j.contains("theta") || !j.contains("phi")) {
        throw ConfigError(where + " needs theta and phi");
    }
    return {as_angle(j.at("theta"), where + ".theta"), as_angle(j.at("phi"), where + ".phi")};
}

ModelSpec parse_model(const json& j)
{
    require_object(j, "model");
    reject_unknown(j, {"type", "q", "l_max", "coefficients", "spectral_amplitude", "transform"}, "model");
    ModelSpec m;
    const auto type = j.value("type", std::string("chiral_demo"));
    if (type == "harmonic") m.kind = ModelKind::harmonic;
    else if (type == "isotropic") m.kind = ModelKind::isotropic;
    else if (type == "circular_demo") m.kind = ModelKind::circular_demo;
    else if (type == "chiral_demo") m.kind = ModelKind::chiral_demo;
    else if (type == "random") m.kind = ModelKind::random;
    else if (type == "zero") m.kind = ModelKind::zero;
    else throw ConfigError("model.type '" + type + "' is not recognised");

    if (j.contains("q")) {
        m.q = as_number(j.at("q"), "model.q");
        if (m.q < 0.0) {
            throw ConfigError("model.q must be non-negative");
        }
    }
    if (j.contains("l_max")) {
        m.l_max = as_int(j.at("l_max"), "model.l_max");
        if (m.l_max < 0 || m.l_max > 32) {
            throw ConfigError("model.l_max must be in [0, 32]");
        }
    }
    if (j.contains("spectral_amplitude")) {
        m.spectral_amplitude = as_complex(j.at("spectral_amplitude"), "model.spectral_amplitude");
    }
    if (j.contains("coefficients")) {
        const auto& arr = j.at("coefficients");
        if (!arr.is_array()) {
            throw ConfigError("model.coefficients must be an array");
        }
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const std::string where = "model.coefficients[" + std::to_string(k) + "]";
            const auto& c = require_object(arr[k], where);
            reject_unknown(c, {"component", "l", "m", "value"}, where);
            if (!c.contains("component") || !c.contains("l") || !c.contains("m") || !c.contains("value")) {
                throw ConfigError(where + " needs component, l, m and value");
            }
            CoefficientEntry e;
            e.component = as_component(c.at("component"), where + ".component");
            e.l = as_int(c.at("l"), where + ".l");
            e.m = as_int(c.at("m"), where + ".m");
            e.value = as_complex(c.at("value"), where + ".value");
            if (e.l < 0 || e.l > m.l_max || std::abs(e.m) > e.l) {
                throw ConfigError(where + " has (l, m) outside 0 <= |m| <= l <= l_max");
            }
            m.coefficients.push_back(e);
        }
    }
    if (m.kind == ModelKind::harmonic && m.coefficients.empty()) {
        throw ConfigError("harmonic model needs a non-empty coefficients array");
    }
    if (j.contains("transform")) {
        const auto& t = j.at("transform");
        if (!t.is_array() || t.size() != 3) {
            throw ConfigError("model.transform must be a 3x3 array");
        }
        Matrix3 mat{};
        for (std::size_t r = 0; r < 3; ++r) {
            if (!t[r].is_array() || t[r].size() != 3) {
                throw ConfigError("model.transform must be a 3x3 array");
            }
            for (std::size_t c = 0; c < 3; ++c) {
                mat[r][c] = as_number(t[r][c], "model.transform");
            }
        }
        m.transform = mat;
    }
    return m;
}

FieldSpec parse_field(const json& j)
{
    require_object(j, "field");
    reject_unknown(j, {"sigma", "second"}, "field");
    FieldSpec f;
    if (j.contains("sigma")) {
        f.sigma = as_int(j.at("sigma"), "field.sigma");
        if (f.sigma != 1 && f.sigma != -1) {
            throw ConfigError("field.sigma must be +1 or -1");
        }
    }
    if (j.contains("second")) {
        const auto& s = require_object(j.at("second"), "field.second");
        reject_unknown(s, {"bound_dipole", "alpha", "coupling", "ordering"}, "field.second");
        SecondFieldSpec sf;
        if (s.contains("bound_dipole")) {
            const auto& d = s.at("bound_dipole");
            if (!d.is_array() || d.size() != 3) {
                throw ConfigError("field.second.bound_dipole must have three components");
            }
            for (std::size_t i = 0; i < 3; ++i) {
                sf.bound_dipole[i] = as_complex(d[i], "field.second.bound_dipole");
            }
        }
        if (s.contains("alpha")) sf.alpha = as_angle(s.at("alpha"), "field.second.alpha");
        if (s.contains("coupling")) sf.coupling = as_complex(s.at("coupling"), "field.second.coupling");
        if (s.contains("ordering")) {
            const auto o = s.at("ordering").get<std::string>();
            if (o == "linear_first") sf.ordering = FieldOrdering::linear_first;
            else if (o == "circular_first") sf.ordering = FieldOrdering::circular_first;
            else throw ConfigError("field.second.ordering must be linear_first or circular_first");
        }
        f.second = sf;
    }
    return f;
}

LoopSpec parse_loop(const json& j)
{
    require_object(j, "loop");
    reject_unknown(j, {"type", "theta0", "segments", "theta", "phi", "points"}, "loop");
    LoopSpec l;
    const auto type = j.value("type", std::string("latitude"));
    if (j.contains("segments")) {
        l.segments = as_resolution(j.at("segments"), "loop.segments");
    }
    if (type == "latitude") {
        l.kind = LoopSpec::Kind::latitude;
        if (j.contains("theta0")) {
            const auto& t = j.at("theta0");
            l.theta0.clear();
            if (t.is_array()) {
                for (const auto& v : t) {
                    l.theta0.push_back(as_angle(v, "loop.theta0"));
                }
                if (l.theta0.empty()) {
                    throw ConfigError("loop.theta0 sweep is empty");
                }
            } else {
                l.theta0.push_back(as_angle(t, "loop.theta0"));
            }
        }
    } else if (type == "point") {
        l.kind = LoopSpec::Kind::point;
        l.point = {as_angle(j.value("theta", json(kPi / 2.0)), "loop.theta"),
                   as_angle(j.value("phi", json(0.0)), "loop.phi")};
    } else if (type == "polyline") {
        l.kind = LoopSpec::Kind::polyline;
        if (!j.contains("points") || !j.at("points").is_array() || j.at("points").empty()) {
            throw ConfigError("polyline loop needs a non-empty points array");
        }
        for (const auto& p : j.at("points")) {
            l.points.push_back(as_point(p, "loop.points"));
        }
    } else {
        throw ConfigError("loop.type must be latitude, point or polyline");
    }
    return l;
}

AnnulusSpec parse_annulus(const json& j)
{
    require_object(j, "annulus");
    reject_unknown(j, {"theta1", "theta2", "n_theta", "n_phi"}, "annulus");
    AnnulusSpec a;
    if (j.contains("theta1")) a.theta1 = as_angle(j.at("theta1"), "annulus.theta1");
    if (j.contains("theta2")) a.theta2 = as_angle(j.at("theta2"), "annulus.theta2");
    if (j.contains("n_theta")) a.n_theta = as_resolution(j.at("n_theta"), "annulus.n_theta");
    if (j.contains("n_phi")) a.n_phi = as_resolution(j.at("n_phi"), "annulus.n_phi");
    if (a.theta1 > a.theta2) {
        throw ConfigError("annulus.theta1 must not exceed annulus.theta2");
    }
    return a;
}

} // namespace

RunConfig parse_config(const json& doc)
{
    require_object(doc, "configuration");
    reject_unknown(doc,
                   {"model", "field", "grid", "quadrature", "loop", "annulus", "probe_point", "output_dir", "seed",
                    "debug"},
                   "configuration");
    RunConfig cfg;
    cfg.document = doc;
    try {
        if (doc.contains("model")) cfg.model = parse_model(doc.at("model"));
        if (doc.contains("field")) cfg.field = parse_field(doc.at("field"));
        if (doc.contains("grid")) {
            const auto& g = require_object(doc.at("grid"), "grid");
            reject_unknown(g, {"n_theta", "n_phi", "pole_margin"}, "grid");
            if (g.contains("n_theta")) cfg.grid.n_theta = as_resolution(g.at("n_theta"), "grid.n_theta");
            if (g.contains("n_phi")) cfg.grid.n_phi = as_resolution(g.at("n_phi"), "grid.n_phi");
            if (g.contains("pole_margin")) {
                cfg.grid.pole_margin = as_angle(g.at("pole_margin"), "grid.pole_margin");
                if (!(cfg.grid.pole_margin > 0.0 && cfg.grid.pole_margin < 0.5)) {
                    throw ConfigError("grid.pole_margin must lie in (0, 0.5) rad");
                }
            }
        }
        if (doc.contains("quadrature")) {
            const auto& q = require_object(doc.at("quadrature"), "quadrature");
            reject_unknown(q, {"degree", "allow_under_resolved"}, "quadrature");
            if (q.contains("degree")) {
                cfg.quadrature_degree = as_int(q.at("degree"), "quadrature.degree");
                if (cfg.quadrature_degree < 1) {
                    throw ConfigError("quadrature.degree must be positive");
                }
            }
            if (q.contains("allow_under_resolved")) {
                cfg.allow_under_resolved = q.at("allow_under_resolved").get<bool>();
            }
        }
        if (doc.contains("loop")) cfg.loop = parse_loop(doc.at("loop"));
        if (doc.contains("annulus")) cfg.annulus = parse_annulus(doc.at("annulus"));
        if (doc.contains("probe_point")) cfg.probe_point = as_point(doc.at("probe_point"), "probe_point");
        if (doc.contains("output_dir")) cfg.output_dir = doc.at("output_dir").get<std::string>();
        if (doc.contains("seed")) {
            if (!doc.at("seed").is_number_unsigned()) {
                throw ConfigError("seed must be a non-negative integer");
            }
            cfg.seed = doc.at("seed").get<std::uint64_t>();
        }
        if (doc.contains("debug")) {
            const auto& d = require_object(doc.at("debug"), "debug");
            reject_unknown(d, {"anti_holomorphic_amplitude"}, "debug");
            cfg.anti_holomorphic_amplitude = d.value("anti_holomorphic_amplitude", false);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid configuration value: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

DipoleModel build_base_model(const RunConfig& config)
{
    const auto& spec = config.model;
    HarmonicDipoleModel model;
    switch (spec.kind) {
    case ModelKind::harmonic:
        model = models::zero(spec.l_max);
        for (const auto& c : spec.coefficients) {
            model.coefficients.at(c.component, c.l, c.m) = c.value;
        }
        break;
    case ModelKind::isotropic:
        model = models::isotropic(spec.q);
        break;
    case ModelKind::circular_demo:
        model = models::circular_demo();
        break;
    case ModelKind::chiral_demo:
        model = models::chiral_demo();
        break;
    case ModelKind::random:
        model = models::random_harmonic(config.seed, spec.l_max);
        break;
    case ModelKind::zero:
        model = models::zero(spec.l_max);
        break;
    }
    model.spectral_amplitude = spec.spectral_amplitude;
    return model;
}

DipoleModel build_model(const RunConfig& config)
{
    auto base = build_base_model(config);
    if (config.model.transform) {
        return transform_model(base, *config.model.transform);
    }
    return base;
}

QuadratureRule build_rule(const RunConfig& config)
{
    if (config.quadrature_degree > 0) {
        return QuadratureRule(config.quadrature_degree);
    }
    const auto& spec = config.model;
    int l_max = spec.l_max;
    switch (spec.kind) {
    case ModelKind::isotropic:
        l_max = 1;
        break;
    case ModelKind::circular_demo:
        l_max = 0;
        break;
    case ModelKind::chiral_demo:
        l_max = 2;
        break;
    default:
        break;
    }
    return default_rule(l_max);
}

TwoPhotonAmplitudeModel build_two_photon(const RunConfig& config, const DipoleModel& continuum)
{
    const auto second = config.field.second.value_or(SecondFieldSpec{});
    return {continuum, second.bound_dipole, second.ordering};
}

} // namespace chiral_berry::cli
