#include "chiral_berry/cli/commands.hpp"

#include "chiral_berry/berry.hpp"
#include "chiral_berry/cli/output.hpp"
#include "chiral_berry/errors.hpp"
#include "chiral_berry/pumpprobe.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

namespace chiral_berry::cli {

namespace {

constexpr double kStokesThreshold = 1e-6;
constexpr double kReductionThreshold = 1e-10;
constexpr double kPseudovectorThreshold = 1e-8;

std::string config_hash(const RunConfig& config) { return sha256_hex(config.document.dump()); }

std::string complex_cells(Complex v) { return format_double(v.real()) + "," + format_double(v.imag()); }

std::string vector_rows(const std::string& label, const ComplexVec3& v)
{
    static const char* axes[] = {"x", "y", "z"};
    std::string out;
    for (std::size_t i = 0; i < 3; ++i) {
        out += label + "," + axes[i] + "," + complex_cells(v[i]) + "\n";
    }
    return out;
}

std::string tensor_csv(const ComplexMatrix3& t)
{
    std::string out = "i,j,value_re,value_im\n";
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            out += std::to_string(i) + "," + std::to_string(j) + "," + complex_cells(t[i][j]) + "\n";
        }
    }
    return out;
}

nlohmann::json complex_json(Complex v) { return nlohmann::json::array({v.real(), v.imag()}); }

nlohmann::json vector_json(const ComplexVec3& v)
{
    return nlohmann::json::array({complex_json(v[0]), complex_json(v[1]), complex_json(v[2])});
}

nlohmann::json block_json(const BlockDensity& b)
{
    return {{"ee", complex_json(b.ee)},
            {"eps_eps", complex_json(b.eps_eps)},
            {"cross", complex_json(b.cross)},
            {"total", complex_json(b.total())}};
}

/// Evaluates fn at every (theta, phi) node of the configured grid, row-major.
template <typename T, typename Fn>
std::vector<T> sample_grid(const GridAxes& axes, int threads, Fn fn)
{
    const std::size_t np = axes.phi.size();
    std::vector<T> out(axes.theta.size() * np);
    parallel_for(axes.theta.size(), threads, [&](std::size_t i) {
        for (std::size_t j = 0; j < np; ++j) {
            out[i * np + j] = fn(OrientationPoint{axes.theta[i], axes.phi[j]});
        }
    });
    return out;
}

template <typename T, typename Get>
std::vector<GridRow> grid_rows(const GridAxes& axes, const std::vector<T>& values, Get get)
{
    const std::size_t np = axes.phi.size();
    std::vector<GridRow> rows;
    rows.reserve(values.size());
    for (std::size_t i = 0; i < axes.theta.size(); ++i) {
        for (std::size_t j = 0; j < np; ++j) {
            rows.push_back({axes.theta[i], axes.phi[j], get(values[i * np + j])});
        }
    }
    return rows;
}

bool is_isotropic(const RunConfig& config)
{
    return config.model.kind == ModelKind::isotropic && !config.model.transform;
}

} // namespace

int resolve_threads(std::optional<int> flag)
{
    if (flag) {
        if (*flag < 1) {
            throw ConfigError("--threads must be at least 1");
        }
        return *flag;
    }
    if (const char* env = std::getenv("CHIRAL_BERRY_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1) {
            throw ConfigError("CHIRAL_BERRY_THREADS must be a positive integer");
        }
        return static_cast<int>(v);
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn)
{
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) {
                    fn(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

int cmd_connection(const RunConfig& config, const RunOptions& options)
{
    const BerryGeometry geom(build_model(config), build_rule(config), config.allow_under_resolved,
                             config.grid.pole_margin);
    const int sigma = config.field.sigma;
    const auto axes = make_grid_axes(config.grid);
    const auto samples = sample_grid<ConnectionSample>(
        axes, options.threads, [&](OrientationPoint p) { return geom.connection_at({p, sigma}); });

    OutputSession out(options.out_dir);
    out.write("connection_A_theta.csv",
              grid_csv(grid_rows(axes, samples, [](const ConnectionSample& s) { return s.a_theta; }), "A_theta"));
    out.write("connection_A_phi.csv",
              grid_csv(grid_rows(axes, samples, [](const ConnectionSample& s) { return s.a_phi; }), "A_phi"));
    out.finalize("connection", config_hash(config), config.seed);
    return kExitSuccess;
}

int cmd_curvature(const RunConfig& config, const RunOptions& options)
{
    const auto model = build_model(config);
    const auto rule = build_rule(config);
    const BerryGeometry geom(model, rule, config.allow_under_resolved, config.grid.pole_margin);
    const auto propensity = propensity_vector(model, rule, config.allow_under_resolved);
    const int sigma = config.field.sigma;
    const auto axes = make_grid_axes(config.grid);

    struct Node {
        DensityChannels channels;
        Complex total;
        std::array<ComplexVec3, 3> forms;
    };
    const auto nodes = sample_grid<Node>(axes, options.threads, [&](OrientationPoint p) {
        const auto d = circular_vector_derivatives({p, sigma}, config.grid.pole_margin);
        return Node{geom.channel_densities(p, sigma), geom.direct_density(p, sigma),
                    {xi_density(d), zeta_density(d), chi_density(d)}};
    });

    const auto& t = geom.curvature();
    std::string vectors = "vector,component,value_re,value_im\n";
    vectors += vector_rows("antisym", t.antisym_vector);
    vectors += vector_rows("diamond", t.diamond_vector);
    vectors += vector_rows("diagonal", t.diagonal_vector);
    vectors += vector_rows("propensity", propensity);

    OutputSession out(options.out_dir);
    out.write("curvature_tensor.csv", tensor_csv(t.gram));
    out.write("curvature_vectors.csv", vectors);
    out.write("curvature_xi.csv", grid_csv(grid_rows(axes, nodes, [](const Node& n) { return n.channels.xi; }), "xi"));
    out.write("curvature_zeta.csv",
              grid_csv(grid_rows(axes, nodes, [](const Node& n) { return n.channels.zeta; }), "zeta"));
    out.write("curvature_chi.csv",
              grid_csv(grid_rows(axes, nodes, [](const Node& n) { return n.channels.chi; }), "chi"));
    out.write("curvature_total.csv",
              grid_csv(grid_rows(axes, nodes, [](const Node& n) { return n.total; }), "total"));
    static const char* forms[] = {"xi", "zeta", "chi"};
    static const char* axes_names[] = {"x", "y", "z"};
    for (std::size_t f = 0; f < 3; ++f) {
        for (std::size_t c = 0; c < 3; ++c) {
            const std::string channel = std::string(forms[f]) + "_" + axes_names[c];
            out.write("form_" + channel + ".csv",
                      grid_csv(grid_rows(axes, nodes, [&](const Node& n) { return n.forms[f][c]; }), channel));
        }
    }
    out.finalize("curvature", config_hash(config), config.seed);
    return kExitSuccess;
}

int cmd_phase(const RunConfig& config, const RunOptions& options)
{
    const double margin = config.grid.pole_margin;
    const BerryGeometry geom(build_model(config), build_rule(config), config.allow_under_resolved, margin);
    const int sigma = config.field.sigma;
    const bool analytic = is_isotropic(config) && config.loop.kind == LoopSpec::Kind::latitude;

    struct Row {
        std::string loop;
        double theta0;
        LoopPhase phase;
    };
    std::vector<Row> rows;
    switch (config.loop.kind) {
    case LoopSpec::Kind::latitude: {
        std::vector<LoopPath> paths;
        for (double t0 : config.loop.theta0) {
            paths.push_back(LoopPath::latitude_circle(t0, config.loop.segments, true, 0.0, margin));
        }
        std::vector<LoopPhase> phases(paths.size());
        parallel_for(paths.size(), options.threads,
                     [&](std::size_t k) { phases[k] = geom.loop_phase(paths[k], sigma); });
        for (std::size_t k = 0; k < paths.size(); ++k) {
            rows.push_back({"latitude", config.loop.theta0[k], phases[k]});
        }
        break;
    }
    case LoopSpec::Kind::point: {
        require_off_pole(config.loop.point, margin);
        const LoopPath path({config.loop.point, config.loop.point}, margin);
        rows.push_back({"point", config.loop.point.theta, geom.loop_phase(path, sigma)});
        break;
    }
    case LoopSpec::Kind::polyline: {
        const LoopPath path(config.loop.points, margin);
        rows.push_back({"polyline", config.loop.points.front().theta, geom.loop_phase(path, sigma)});
        break;
    }
    }

    std::optional<StokesReport> stokes;
    if (config.annulus) {
        const auto& a = *config.annulus;
        stokes = geom.stokes_check(a.theta1, a.theta2, sigma, {a.n_theta, a.n_phi, config.loop.segments});
    }

    std::string csv = "loop,theta0,sigma,phase_raw,phase_principal,phase_imag_residual";
    csv += analytic ? ",analytic_isotropic\n" : "\n";
    for (const auto& r : rows) {
        csv += r.loop + "," + format_double(r.theta0) + "," + std::to_string(sigma) + ","
             + format_double(r.phase.raw) + "," + format_double(r.phase.principal) + ","
             + format_double(r.phase.imaginary_residual);
        if (analytic) {
            csv += "," + format_double(2.0 * kPi * sigma * config.model.q * std::cos(r.theta0));
        }
        csv += "\n";
    }

    OutputSession out(options.out_dir);
    out.write("phase.csv", csv);
    if (stokes) {
        out.write_json("stokes.json", {{"theta1", config.annulus->theta1},
                                       {"theta2", config.annulus->theta2},
                                       {"sigma", sigma},
                                       {"boundary", stokes->boundary},
                                       {"surface", stokes->surface},
                                       {"residual", stokes->residual},
                                       {"threshold", kStokesThreshold},
                                       {"pass", stokes->residual < kStokesThreshold}});
    }
    out.finalize("phase", config_hash(config), config.seed);
    return kExitSuccess;
}

int cmd_pumpprobe(const RunConfig& config, const RunOptions& options)
{
    const double margin = config.grid.pole_margin;
    const auto second = config.field.second.value_or(SecondFieldSpec{});
    const auto model = build_model(config);
    const auto rule = build_rule(config);
    const auto two = build_two_photon(config, model);
    const int sigma = config.field.sigma;
    const auto fields = make_two_field(config.probe_point, sigma, second.alpha, second.coupling);
    fields.validate();
    require_off_pole(config.probe_point, margin);

    const PumpProbeGeometry geom(two, rule, second.coupling, config.allow_under_resolved, margin);
    const auto connection = geom.split_connection(fields);
    const auto blocks = geom.curvature_blocks(fields);
    const auto pull = geom.pullback(fields);

    nlohmann::json report;
    report["ordering"] = second.ordering == FieldOrdering::linear_first ? "linear_first" : "circular_first";
    report["probe_point"] = {{"theta", config.probe_point.theta}, {"phi", config.probe_point.phi}};
    report["sigma"] = sigma;
    report["alpha"] = second.alpha;
    if (second.ordering == FieldOrdering::linear_first) {
        const double residual = one_field_reduction_check(two, rule, fields);
        report["one_field_reduction"] = {{"applicable", true},
                                         {"linear_coupling", linear_coupling(two, fields)},
                                         {"residual", residual},
                                         {"threshold", kReductionThreshold},
                                         {"pass", residual < kReductionThreshold}};
    } else {
        report["one_field_reduction"] = {{"applicable", false}};
    }
    report["pullback"] = {{"a_theta_e", complex_json(pull.a_theta_e)},
                          {"a_theta_eps", complex_json(pull.a_theta_eps)},
                          {"a_phi_e", complex_json(pull.a_phi_e)},
                          {"a_phi_eps", complex_json(pull.a_phi_eps)},
                          {"a_alpha_eps", complex_json(pull.a_alpha_eps)},
                          {"theta_phi", block_json(pull.theta_phi)}};
    report["anisotropic_channel"] = {{"theta_alpha", block_json(pull.theta_alpha)},
                                     {"phi_alpha", block_json(pull.phi_alpha)}};
    report["linear_block_norm"] = norm(blocks.omega_eps);

    if (config.model.transform) {
        const auto& m = *config.model.transform;
        const TwoPhotonAmplitudeModel base{build_base_model(config), two.bound_dipole, two.ordering};
        const PumpProbeGeometry base_geom(base, rule, second.coupling, config.allow_under_resolved, margin);
        const auto base_omega = base_geom.curvature_blocks(fields).omega_e;
        const auto expected = determinant(m) * (m * base_omega);
        const double residual = max_abs(blocks.omega_e - expected) / std::max(1.0, max_abs(base_omega));
        report["pseudovector"] = {{"determinant", determinant(m)},
                                  {"base_omega_e", vector_json(base_omega)},
                                  {"transformed_omega_e", vector_json(blocks.omega_e)},
                                  {"residual", residual},
                                  {"threshold", kPseudovectorThreshold},
                                  {"pass", residual < kPseudovectorThreshold}};
    }

    std::string vectors = "quantity,component,value_re,value_im\n";
    vectors += vector_rows("A_e", connection.a_e);
    vectors += vector_rows("A_eps", connection.a_eps);
    vectors += vector_rows("omega_e", blocks.omega_e);
    vectors += vector_rows("omega_eps", blocks.omega_eps);
    vectors += vector_rows("cross_vector", blocks.cross_vector);

    OutputSession out(options.out_dir);
    out.write("pumpprobe_vectors.csv", vectors);
    out.write("pumpprobe_cross_tensor.csv", tensor_csv(blocks.cross_tensor));
    out.write_json("pumpprobe_report.json", report);
    out.finalize("pumpprobe", config_hash(config), config.seed);
    return kExitSuccess;
}

int cmd_verify(const RunConfig& config, const RunOptions& options)
{
    const auto suites = run_verification(config, options.threads);
    bool all = true;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& s : suites) {
        all = all && s.passed;
        list.push_back({{"name", s.name},
                        {"residual", s.residual},
                        {"threshold", s.threshold},
                        {"kind", s.lower_bound ? "lower_bound" : "upper_bound"},
                        {"pass", s.passed}});
        if (!s.passed) {
            std::cerr << "FAIL " << s.name << ": residual " << format_double(s.residual) << ", threshold "
                      << format_double(s.threshold) << "\n";
        }
    }
    OutputSession out(options.out_dir);
    out.write_json("verify.json", {{"pass", all}, {"suites", list}});
    out.finalize("verify", config_hash(config), config.seed);
    return all ? kExitSuccess : kExitVerificationFailed;
}

int run(int argc, char** argv)
{
    CLI::App app{"Berry connection, curvature and loop phases of photoionization amplitudes", "chiral-berry"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<int> threads;
    std::optional<std::uint64_t> seed;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"connection", "Connection components on the orientation grid"},
        {"curvature", "Gram tensor, channel vectors and curvature density grids"},
        {"phase", "Loop phases and the optional Stokes annulus report"},
        {"pumpprobe", "Two-field split connection and curvature blocks"},
        {"verify", "Identity and property suites"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "Output directory (overrides output_dir)");
        sub->add_option("--threads", threads, "Worker threads (default: CHIRAL_BERRY_THREADS or all cores)");
        sub->add_option("--seed", seed, "Random seed (overrides the config)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        auto doc = [&] {
            auto config = load_config(config_path);
            return config.document;
        }();
        if (seed) {
            doc["seed"] = *seed;
        }
        const auto config = parse_config(doc);
        RunOptions options{out_dir.empty() ? std::filesystem::path(config.output_dir) : std::filesystem::path(out_dir),
                           resolve_threads(threads)};
        if (command == "connection") return cmd_connection(config, options);
        if (command == "curvature") return cmd_curvature(config, options);
        if (command == "phase") return cmd_phase(config, options);
        if (command == "pumpprobe") return cmd_pumpprobe(config, options);
        return cmd_verify(config, options);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const NotOrthogonal& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const PoleSingularity& e) {
        std::cerr << "numeric precondition: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const QuadratureUnderResolved& e) {
        std::cerr << "numeric precondition: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const OpenPath& e) {
        std::cerr << "numeric precondition: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericError;
    }
}

} // namespace chiral_berry::cli
