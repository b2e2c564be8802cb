#include "fanosense/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fanosense/analytic.hpp"
#include "fanosense/config.hpp"
#include "fanosense/errors.hpp"
#include "fanosense/io.hpp"
#include "fanosense/lindblad.hpp"
#include "fanosense/units.hpp"
#include "fanosense/validation.hpp"

namespace fanosense::cli {

namespace fs = std::filesystem;
using config::json;
using io::format_double;
using io::number_or_null;
using Meta = std::vector<std::pair<std::string, std::string>>;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Flags {
    std::string config_path;
    std::vector<std::string> sets;
    std::string engine;
    std::string window;
    std::string n_range;
    std::optional<double> tau_max;
    std::optional<double> lambda;
    std::string orders;
    std::optional<int> fock;
    bool plot = false;
    int jobs = 0;
    std::string out;
};

struct Context {
    config::RunConfig rc;
    Flags flags;
    fs::path dir;
    std::ostream& out;
    std::ostream& err;
};

const char* name(materials::Wavenumber w) { return w == materials::Wavenumber::cyclic ? "cyclic" : "angular"; }
const char* name(SaturationForm s) { return s == SaturationForm::bloch ? "bloch" : "printed"; }
const char* name(Emission e) { return e == Emission::plasmon ? "plasmon" : "full"; }
const char* name(sensing::Engine e) { return e == sensing::Engine::analytic ? "analytic" : "lindblad"; }
const char* name(sensing::Anchor a) { return a == sensing::Anchor::edge ? "edge" : "midpoint"; }

std::string describe(const sensing::Window& w) {
    return format_double(w.lo) + ":" + format_double(w.hi) + ":" + format_double(w.step);
}

Meta base_meta(const Context& ctx, const std::string& command) {
    const auto& rc = ctx.rc;
    const auto& c = rc.model.conventions;
    return {{"fanosense", command},
            {"config_hash", rc.hash},
            {"fock_dim", std::to_string(rc.solver.fock_dim)},
            {"residual_tol", format_double(rc.solver.residual_tol)},
            {"conventions", std::string("wavenumber=") + name(c.wavenumber) + " field_index_power=" +
                                std::to_string(c.field_index_power) + " saturation=" + name(c.saturation) +
                                " emission=" + name(c.emission)}};
}

json meta_json(const Meta& meta, const config::RunConfig& rc) {
    json j = json::object();
    for (const auto& [k, v] : meta) j[k] = v;
    j["config"] = rc.document;
    return j;
}

json table_json(const io::Table& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::array();
        for (const auto& cell : row) {
            if (const auto* d = std::get_if<double>(&cell))
                r.push_back(number_or_null(*d));
            else
                r.push_back(std::get<std::string>(cell));
        }
        rows.push_back(std::move(r));
    }
    return {{"columns", t.columns}, {"rows", std::move(rows)}};
}

std::vector<int> parse_orders(const std::string& text) {
    std::vector<int> orders;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        try {
            std::size_t used = 0;
            orders.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ConfigError("orders", "expected a comma separated list such as 2,3,4");
        }
    }
    return orders;
}

json window_json(const sensing::Window& w) { return {{"min", w.lo}, {"max", w.hi}, {"step", w.step}}; }

// Folds the command line into the config document so the hash covers it.
json build_document(const Flags& f, const std::string& command) {
    json doc = config::merge_document(f.config_path.empty() ? json(nullptr) : config::load_file(f.config_path));
    for (const auto& s : f.sets) config::apply_override(doc, s);
    auto set = [&](const std::string& key, const json& value) { config::apply_override(doc, key + "=" + value.dump()); };
    if (f.fock) set("solver.fock_dim", *f.fock);
    if (f.tau_max) set("correlations.tau_max", *f.tau_max);
    if (f.lambda) set("correlations.lambda", *f.lambda);
    if (!f.orders.empty()) set("correlations.orders", parse_orders(f.orders));
    if (f.plot) set("output.plot", true);
    if (!f.n_range.empty()) set("grids.n", window_json(config::parse_window(f.n_range, "n_range")));
    if (!f.window.empty()) {
        if (command != "spectrum") throw ConfigError("window", "--window applies to spectrum; use --set grids.plasmon / grids.fano for sense");
        set("grids.spectrum", window_json(config::parse_window(f.window, "window")));
    }
    if (!f.engine.empty() && f.engine != "analytic" && f.engine != "lindblad" && f.engine != "both")
        throw ConfigError("engine", "expected analytic, lindblad or both");
    if (command == "sense" && !f.engine.empty()) {
        if (f.engine == "both") throw ConfigError("engine", "sense runs one engine at a time");
        set("grids.engine", f.engine);
    }
    return doc;
}

fs::path output_dir(const Flags& f, const config::RunConfig& rc, const std::string& command) {
    fs::path base = "out";
    if (!f.out.empty())
        base = f.out;
    else if (!rc.output_dir.empty())
        base = rc.output_dir;
    else if (const char* env = std::getenv("FANOSENSE_OUT"); env && *env)
        base = env;
    return base / command;
}

void write_outputs(const Context& ctx, const std::string& stem, const Meta& meta, const io::Table& table, json extra = {}) {
    io::write_csv(ctx.dir / (stem + ".csv"), meta, table);
    json doc = meta_json(meta, ctx.rc);
    doc = {{"meta", doc}, {"config", ctx.rc.document}, {"table", table_json(table)}};
    if (!extra.is_null())
        for (auto& [k, v] : extra.items()) doc[k] = v;
    io::write_json(ctx.dir / (stem + ".json"), doc);
}

int cmd_params(Context& ctx) {
    const auto& cfg = ctx.rc.model;
    const auto metal = cfg.effective_metal();
    const auto p = derived_plasmon(cfg);
    const auto op = operating_point(cfg, p.lambda_pl);
    const double omega_ex = cfg.qd.exciton_energy();
    const std::vector<std::tuple<std::string, double, std::string>> rows{
        {"L", p.L_factor, ""},
        {"f", p.f, ""},
        {"reflectance", p.reflectance, ""},
        {"omega_p", metal.omega_p, "meV"},
        {"omega_pl", p.omega_pl, "meV"},
        {"lambda_pl", p.lambda_pl, "nm"},
        {"eta", p.eta, "meV"},
        {"gamma_nr", p.gamma_nr, "meV"},
        {"gamma_r", p.gamma_r, "meV"},
        {"gamma_pl", p.gamma_pl, "meV"},
        {"gamma_r_inv", units::lifetime_ps(p.gamma_r), "ps"},
        {"gamma_pl_inv", units::lifetime_ps(p.gamma_pl) * 1e3, "fs"},
        {"chi", p.chi, "D"},
        {"chi_over_mu", p.chi / cfg.qd.mu, ""},
        {"g", p.g, "meV"},
        {"omega_ex", omega_ex, "meV"},
        {"lambda_ex", units::wavelength_nm(omega_ex), "nm"},
        {"gamma_ex", cfg.qd.gamma_ex, "neV"},
        {"E0", op.drive.E0, "V/m"},
        {"Omega_pl", op.drive.Omega_pl, "meV"},
        {"Omega_ex", op.drive.Omega_ex, "meV"},
        {"d", cfg.geometry.d(), "nm"},
    };
    io::Table t{{"quantity", "value", "unit"}, {}};
    for (const auto& [k, v, u] : rows) {
        t.rows.push_back({k, v, u});
        ctx.out << k << " = " << format_double(v) << (u.empty() ? "" : " " + u) << '\n';
    }
    if (cfg.geometry.gap_below_dipole_limit()) ctx.err << "warning: gap l < 3 nm, point-dipole coupling is unreliable\n";
    write_outputs(ctx, "params", base_meta(ctx, "params"), t);
    return ok;
}

int cmd_spectrum(Context& ctx) {
    const auto& rc = ctx.rc;
    std::vector<sensing::Engine> engines;
    const std::string e = ctx.flags.engine.empty() ? "analytic" : ctx.flags.engine;
    if (e == "analytic" || e == "both") engines.push_back(sensing::Engine::analytic);
    if (e == "lindblad" || e == "both") engines.push_back(sensing::Engine::lindblad);

    const auto lambdas = rc.spectrum.grid();
    if (lambdas.empty()) throw ConfigError("window", "empty window");
    const sensing::SweepGrid grid{lambdas, {rc.model.environment.n}, sensing::Region::plasmon};

    Meta meta = base_meta(ctx, "spectrum");
    meta.emplace_back("engine", e);
    meta.emplace_back("window", describe(rc.spectrum));
    meta.emplace_back("n", format_double(rc.model.environment.n));

    io::Table t;
    t.columns.push_back("lambda_nm");
    t.rows.assign(lambdas.size(), {});
    for (std::size_t i = 0; i < lambdas.size(); ++i) t.rows[i].push_back(lambdas[i]);
    json errors = json::array();
    std::size_t failed_rows = 0;
    std::vector<io::Series> series;
    for (const auto engine : engines) {
        const auto res = sensing::sweep(rc.model, grid, engine, rc.solver, ctx.flags.jobs);
        const std::string sfx = engines.size() > 1 ? std::string("_") + name(engine) : "";
        for (const char* c : {"flux", "m_mean", "g2_0", "g3_0", "g4_0", "flux_norm"}) t.columns.push_back(c + sfx);
        double peak = 0.0;
        for (const auto& r : res)
            if (r.ok() && std::isfinite(r.flux)) peak = std::max(peak, r.flux);
        io::Series norm{std::string("flux/max ") + name(engine), {}};
        for (std::size_t i = 0; i < res.size(); ++i) {
            const auto& r = res[i];
            const double fn = peak > 0.0 ? r.flux / peak : kNaN;
            t.rows[i].insert(t.rows[i].end(), {r.flux, r.stats.m_mean, r.g2, r.g3, r.g4, fn});
            norm.y.push_back(fn);
            if (!r.ok()) {
                ++failed_rows;
                errors.push_back({{"lambda_nm", r.lambda}, {"engine", name(engine)}, {"error", r.error}});
                meta.emplace_back("error", format_double(r.lambda) + " nm " + name(engine) + ": " + r.error);
                ctx.err << "row failed at " << format_double(r.lambda) << " nm (" << name(engine) << "): " << r.error << '\n';
            }
        }
        series.push_back(std::move(norm));
    }
    write_outputs(ctx, "spectrum", meta, t, {{"errors", errors}});
    if (rc.plot) io::write_svg(ctx.dir / "spectrum.svg", "Normalized scattered flux", "wavelength (nm)", lambdas, series);
    ctx.out << "spectrum: " << lambdas.size() << " wavelengths, " << failed_rows << " failed rows -> " << ctx.dir.string() << '\n';
    return failed_rows == lambdas.size() * engines.size() ? numerical_failure : ok;
}

int cmd_correlations(Context& ctx) {
    const auto& rc = ctx.rc;
    const auto& c = rc.correlations;
    const auto op = operating_point(rc.model, c.lambda);
    const lindblad::HilbertSpace space{rc.solver.fock_dim};
    const lindblad::Liouvillian L(lindblad::build_hamiltonian(op.drive, op.plasmon, space),
                                  {op.plasmon.gamma_pl, op.drive.gamma_ex_meV()}, space);
    lindblad::SteadyStateDiagnostics diag;
    const auto rho = lindblad::steady_state(L, &diag, rc.solver.residual_tol);
    const auto b = lindblad::emission_operator(op.plasmon, op.drive, space, rc.model.conventions.emission);
    const auto tau = sensing::make_grid(0.0, c.tau_max, c.tau_step);

    Meta meta = base_meta(ctx, "correlations");
    meta.emplace_back("engine", "lindblad");
    meta.emplace_back("lambda_nm", format_double(c.lambda));
    meta.emplace_back("tau_grid_ps", format_double(0.0) + ":" + format_double(c.tau_max) + ":" + format_double(c.tau_step));
    meta.emplace_back("top_fock_population", format_double(diag.top_fock_population));
    meta.emplace_back("steady_state_residual", format_double(diag.residual));

    io::Table t;
    t.columns.push_back("tau_ps");
    t.rows.assign(tau.size(), {});
    for (std::size_t i = 0; i < tau.size(); ++i) t.rows[i].push_back(tau[i]);
    std::vector<io::Series> series;
    const auto curves = lindblad::correlation_tau(L, rho, std::span<const int>(c.orders), tau, b);
    for (std::size_t k = 0; k < c.orders.size(); ++k) {
        const int order = c.orders[k];
        const auto& g = curves[k];
        t.columns.push_back("g" + std::to_string(order) + "_tau");
        for (std::size_t i = 0; i < tau.size(); ++i) t.rows[i].push_back(g[i]);
        series.push_back({"g" + std::to_string(order) + "(tau)", g});
        ctx.out << "g" << order << "(0) = " << format_double(g.front()) << ", g" << order << "(" << format_double(tau.back())
                << " ps) = " << format_double(g.back()) << '\n';
    }
    write_outputs(ctx, "correlations", meta, t);
    if (rc.plot)
        io::write_svg(ctx.dir / "correlations.svg", "Delayed correlations at " + format_double(c.lambda) + " nm",
                      "tau (ps)", tau, series);
    return ok;
}

io::Cell cell_or_empty(double v, bool present) {
    if (!present) return std::string();
    return v;
}

double resolution_value(const sensing::Resolution& r) {
    return r.infinite ? std::numeric_limits<double>::infinity() : r.value;
}

json resolution_json(const sensing::Resolution& r) {
    if (r.infinite) return "inf";
    return number_or_null(r.value);
}

json sensitivity_json(const sensing::Sensitivity& s) {
    return {{"value", number_or_null(s.value)},
            {"derivative", number_or_null(s.derivative)},
            {"richardson", number_or_null(s.richardson)},
            {"linearity", number_or_null(s.linearity)},
            {"at_n", number_or_null(s.at_n)}};
}

int cmd_sense(Context& ctx) {
    auto options = ctx.rc.sense;
    options.jobs = ctx.flags.jobs;
    const auto report = sensing::build_report(ctx.rc.model, options);

    Meta meta = base_meta(ctx, "sense");
    meta.emplace_back("engine", name(options.engine));
    meta.emplace_back("plasmon_window", options.plasmon ? describe(*options.plasmon) : "none");
    meta.emplace_back("fano_window", options.fano ? describe(*options.fano) : "none");
    meta.emplace_back("n_grid", describe(options.n));
    meta.emplace_back("derivative", std::string(name(options.anchor)) +
                                        (options.anchor == sensing::Anchor::edge ? " one-sided 3-point at n_min"
                                                                                 : " central difference at mid n"));
    meta.emplace_back("anchor_n", format_double(report.anchor_n));
    meta.emplace_back("partial", report.partial ? "true" : "false");
    for (const auto& w : report.warnings) meta.emplace_back("warning", w);

    const char* labels[] = {"L", "M", "R"};
    for (int i = 0; i < 3; ++i) {
        const auto& es = report.enhancement.sensitivity[i];
        const auto& ed = report.enhancement.resolution[i];
        meta.emplace_back(std::string("E_S") + labels[i], es ? format_double(*es) : "");
        meta.emplace_back(std::string("E_dn") + labels[i], ed ? format_double(*ed) : "");
    }

    io::Table points{{"label", "lambda_nm", "m_mean", "g2_0", "sigma_m", "sigma_g2", "S_I", "S_II", "dn_I", "dn_II",
                      "S_I_mid", "S_II_mid", "linearity_m", "linearity_g2"},
                     {}};
    json points_json = json::array();
    for (const auto& p : report.points) {
        const bool g2 = p.g2_sensing;
        points.rows.push_back({p.label, p.lambda, p.m_mean, p.g2, p.sigma_m, cell_or_empty(p.sigma_g2, g2),
                               p.S_I.value, cell_or_empty(p.S_II.value, g2), resolution_value(p.dn_I),
                               cell_or_empty(resolution_value(p.dn_II), g2), p.S_I_mid.value,
                               cell_or_empty(p.S_II_mid.value, g2), p.linearity_m, cell_or_empty(p.linearity_g2, g2)});
        points_json.push_back({{"label", p.label},
                               {"lambda_nm", p.lambda},
                               {"m_mean", number_or_null(p.m_mean)},
                               {"g2_0", number_or_null(p.g2)},
                               {"sigma_m", number_or_null(p.sigma_m)},
                               {"sigma_g2", g2 ? number_or_null(p.sigma_g2) : json(nullptr)},
                               {"S_I", sensitivity_json(p.S_I)},
                               {"S_II", g2 ? sensitivity_json(p.S_II) : json(nullptr)},
                               {"S_I_mid", sensitivity_json(p.S_I_mid)},
                               {"S_II_mid", g2 ? sensitivity_json(p.S_II_mid) : json(nullptr)},
                               {"dn_I", resolution_json(p.dn_I)},
                               {"dn_II", g2 ? resolution_json(p.dn_II) : json(nullptr)},
                               {"linearity_m", number_or_null(p.linearity_m)},
                               {"linearity_g2", g2 ? number_or_null(p.linearity_g2) : json(nullptr)}});
    }

    io::Table rows{{"region", "lambda_nm", "m_mean", "g2_0", "sigma_m", "sigma_g2", "S_I", "S_II", "dn_I", "dn_II"}, {}};
    for (const auto& r : report.rows) {
        const bool g2 = r.g2_sensing;
        rows.rows.push_back({std::string(r.region == sensing::Region::plasmon ? "plasmon" : "fano"), r.lambda, r.m_mean,
                             r.g2, r.sigma_m, cell_or_empty(r.sigma_g2, g2), r.S_I, cell_or_empty(r.S_II, g2),
                             resolution_value(r.dn_I), cell_or_empty(resolution_value(r.dn_II), g2)});
    }

    json enh = json::object();
    for (int i = 0; i < 3; ++i) {
        const auto& es = report.enhancement.sensitivity[i];
        const auto& ed = report.enhancement.resolution[i];
        enh[std::string("E_S") + labels[i]] = es ? number_or_null(*es) : json(nullptr);
        enh[std::string("E_dn") + labels[i]] = ed ? number_or_null(*ed) : json(nullptr);
    }

    io::write_csv(ctx.dir / "sense.csv", meta, points);
    io::write_csv(ctx.dir / "sense_spectrum.csv", meta, rows);
    json doc{{"meta", meta_json(meta, ctx.rc)},
             {"points", points_json},
             {"enhancement", enh},
             {"partial", report.partial},
             {"warnings", report.warnings},
             {"anchor_n", report.anchor_n},
             {"n_grid", report.n_grid},
             {"spectrum", table_json(rows)}};
    if (auto best = sensing::best_g2_wavelength(report)) doc["best_g2_lambda_nm"] = *best;
    io::write_json(ctx.dir / "sense.json", doc);

    if (ctx.rc.plot) {
        for (const auto region : {sensing::Region::plasmon, sensing::Region::fano}) {
            std::vector<double> x, m;
            for (const auto& r : report.rows)
                if (r.region == region) x.push_back(r.lambda), m.push_back(r.m_mean);
            if (x.empty()) continue;
            const std::string tag = region == sensing::Region::plasmon ? "plasmon" : "fano";
            io::write_svg(ctx.dir / ("sense_" + tag + ".svg"), "Mean photocount, " + tag + " window", "wavelength (nm)", x,
                          {{"m_mean", m}});
        }
    }

    for (const auto& p : report.points) {
        ctx.out << p.label << " lambda=" << format_double(p.lambda) << " S_I=" << format_double(p.S_I.value)
                << " dn_I=" << format_double(resolution_value(p.dn_I));
        if (p.g2_sensing)
            ctx.out << " S_II=" << format_double(p.S_II.value) << " dn_II=" << format_double(resolution_value(p.dn_II));
        ctx.out << '\n';
    }
    for (int i = 0; i < 3; ++i)
        if (report.enhancement.sensitivity[i])
            ctx.out << "E_S" << labels[i] << "=" << format_double(*report.enhancement.sensitivity[i]) << " E_dn" << labels[i]
                    << "=" << format_double(report.enhancement.resolution[i].value_or(kNaN)) << '\n';
    for (const auto& w : report.warnings) ctx.err << "warning: " << w << '\n';
    if (report.partial) ctx.err << "warning: partial report\n";
    return ok;
}

int cmd_validate(Context& ctx) {
    validation::Options options;
    options.solver = ctx.rc.solver;
    options.convergence_dims = ctx.rc.convergence_dims;
    options.convergence_tol = ctx.rc.convergence_tol;
    options.jobs = ctx.flags.jobs;
    const auto report = validation::run(ctx.rc.model, options);

    Meta meta = base_meta(ctx, "validate");
    std::string dims;
    for (int d : options.convergence_dims) dims += (dims.empty() ? "" : ",") + std::to_string(d);
    meta.emplace_back("convergence_dims", dims);
    meta.emplace_back("lambda_pl", format_double(report.lambda_pl));
    meta.emplace_back("lambda_fano_dip", format_double(report.lambda_dip));
    meta.emplace_back("lambda_fano_peak", format_double(report.lambda_peak));

    io::Table t{{"check", "measured", "tolerance", "pass", "detail"}, {}};
    json checks = json::array();
    for (const auto& c : report.checks) {
        t.rows.push_back({c.name, c.measured, c.tolerance, std::string(c.pass ? "true" : "false"), c.detail});
        checks.push_back({{"name", c.name},
                          {"measured", std::isnan(c.measured) ? json(nullptr)
                                       : std::isinf(c.measured) ? json("inf")
                                                                : json(c.measured)},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass},
                          {"detail", c.detail}});
        ctx.out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " measured=" << format_double(c.measured)
                << " tolerance=" << format_double(c.tolerance) << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
    }
    // detail strings may contain commas
    for (auto& row : t.rows) {
        auto& d = std::get<std::string>(row.back());
        std::replace(d.begin(), d.end(), ',', ';');
    }
    write_outputs(ctx, "validate", meta, t, {{"checks", checks}, {"passed", report.passed()}});
    return report.passed() ? ok : validation_failure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fanosense: plasmon/quantum-dot refractive index sensing simulator", "fanosense"};
    Flags f;
    app.add_option("--config", f.config_path, "JSON config document");
    app.add_option("--set", f.sets, "override a dotted config key, KEY=VAL (repeatable)")->allow_extra_args(false)->take_all();
    app.add_option("--engine", f.engine, "analytic|lindblad|both");
    app.add_option("--window", f.window, "spectrum window lambda_min:lambda_max:step (nm)");
    app.add_option("--n-range", f.n_range, "refractive index sweep a:b:step");
    app.add_option("--tau-max", f.tau_max, "largest delay (ps)");
    app.add_option("--lambda", f.lambda, "drive wavelength for correlations (nm)");
    app.add_option("--orders", f.orders, "correlation orders, e.g. 2,3,4");
    app.add_option("--fock", f.fock, "Fock space dimension");
    app.add_flag("--plot", f.plot, "write SVG plots");
    app.add_option("--jobs", f.jobs, "worker threads (0 = all cores)");
    app.add_option("--out", f.out, "output base directory");
    app.require_subcommand(1, 1);
    app.fallthrough();
    for (const char* cmd : {"params", "spectrum", "correlations", "sense", "validate"}) {
        static const std::map<std::string, std::string> help{
            {"params", "derived plasmon and coupling parameters"},
            {"spectrum", "flux, photocounts and zero-delay correlations over a wavelength window"},
            {"correlations", "delayed correlations g(n)(tau) from the Lindblad solver"},
            {"sense", "special points, sensitivities, resolutions and enhancement factors"},
            {"validate", "solver and physics self-checks"}};
        app.add_subcommand(cmd, help.at(cmd));
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        if (f.jobs < 0) throw ConfigError("jobs", "must be >= 0");
        const json doc = build_document(f, command);
        Context ctx{config::resolve(doc), f, {}, out, err};
        ctx.dir = output_dir(f, ctx.rc, command);
        if (command == "params") return cmd_params(ctx);
        if (command == "spectrum") return cmd_spectrum(ctx);
        if (command == "correlations") return cmd_correlations(ctx);
        if (command == "sense") return cmd_sense(ctx);
        return cmd_validate(ctx);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical_failure;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace fanosense::cli
