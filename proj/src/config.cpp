#include "fanosense/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fanosense/errors.hpp"

namespace fanosense::config {

namespace {

enum class Kind { number, integer, string, boolean, int_array, object };

// Leaves that are not plain numbers, and which paths accept null.
const std::map<std::string, Kind>& special_kinds() {
    static const std::map<std::string, Kind> kinds{
        {"geometry.s_alpha", Kind::integer},        {"geometry.s_beta", Kind::integer},
        {"conventions.field_index_power", Kind::integer}, {"solver.fock_dim", Kind::integer},
        {"conventions.wavenumber", Kind::string},   {"conventions.saturation", Kind::string},
        {"conventions.emission", Kind::string},     {"grids.anchor", Kind::string},
        {"grids.engine", Kind::string},             {"output.dir", Kind::string},
        {"output.plot", Kind::boolean},             {"solver.convergence_dims", Kind::int_array},
        {"correlations.orders", Kind::int_array},
    };
    return kinds;
}

const std::set<std::string>& nullable() {
    static const std::set<std::string> paths{"metal.lspr_target", "qd.omega_ex",    "qd.lambda_ex",
                                             "solver.convergence_dims", "grids.plasmon", "grids.fano",
                                             "output.dir"};
    return paths;
}

Kind kind_of(const std::string& path, const json& default_value) {
    if (default_value.is_object()) return Kind::object;
    const auto it = special_kinds().find(path);
    return it == special_kinds().end() ? Kind::number : it->second;
}

std::string join(const std::string& prefix, const std::string& key) { return prefix.empty() ? key : prefix + "." + key; }

void check_leaf(const std::string& path, Kind kind, const json& v) {
    switch (kind) {
        case Kind::number:
            if (!v.is_number()) throw ConfigError(path, "expected a number");
            break;
        case Kind::integer:
            if (!v.is_number_integer() && !(v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()))
                throw ConfigError(path, "expected an integer");
            break;
        case Kind::string:
            if (!v.is_string()) throw ConfigError(path, "expected a string");
            break;
        case Kind::boolean:
            if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
            break;
        case Kind::int_array:
            if (!v.is_array()) throw ConfigError(path, "expected an array of integers");
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!v[i].is_number_integer()) throw ConfigError(path + "[" + std::to_string(i) + "]", "expected an integer");
            break;
        case Kind::object:
            break;
    }
}

void merge_into(json& target, const json& user, const json& defaults, const std::string& prefix) {
    if (!user.is_object()) throw ConfigError(prefix.empty() ? "config" : prefix, "expected an object");
    for (const auto& [key, value] : user.items()) {
        const std::string path = join(prefix, key);
        if (!defaults.contains(key)) throw ConfigError(path, "unknown key");
        const json& def = defaults.at(key);
        const Kind kind = kind_of(path, def);
        if (value.is_null()) {
            if (!nullable().count(path)) throw ConfigError(path, "may not be null");
            target[key] = nullptr;
            continue;
        }
        if (kind == Kind::object) {
            if (!value.is_object()) throw ConfigError(path, "expected an object");
            if (!target[key].is_object()) target[key] = def;
            merge_into(target[key], value, def, path);
            continue;
        }
        check_leaf(path, kind, value);
        if (kind == Kind::integer)
            target[key] = static_cast<std::int64_t>(value.get<double>());
        else if (kind == Kind::number)
            target[key] = value.get<double>();
        else
            target[key] = value;
    }
    // Exciton energy and wavelength are alternatives: setting one clears the other.
    if (prefix == "qd") {
        const bool has_w = user.contains("omega_ex") && !user["omega_ex"].is_null();
        const bool has_l = user.contains("lambda_ex") && !user["lambda_ex"].is_null();
        if (has_w && has_l) throw ConfigError("qd", "set only one of omega_ex and lambda_ex");
        if (has_w) target["lambda_ex"] = nullptr;
        if (has_l) target["omega_ex"] = nullptr;
    }
}

json window_json(double lo, double hi, double step) { return {{"min", lo}, {"max", hi}, {"step", step}}; }

sensing::Window window_from(const json& j, const std::string& path) {
    sensing::Window w{j.at("min").get<double>(), j.at("max").get<double>(), j.at("step").get<double>()};
    if (!std::isfinite(w.lo) || !std::isfinite(w.hi)) throw ConfigError(path, "bounds must be finite");
    if (!(w.step > 0.0)) throw ConfigError(path + ".step", "must be > 0");
    if (w.hi < w.lo) throw ConfigError(path, "empty window (max < min)");
    return w;
}

template <class E>
E pick(const json& v, const std::string& path, std::initializer_list<std::pair<const char*, E>> options) {
    const auto s = v.get<std::string>();
    std::string allowed;
    for (const auto& [name, e] : options) {
        if (s == name) return e;
        allowed += allowed.empty() ? name : std::string("|") + name;
    }
    throw ConfigError(path, "expected one of " + allowed + ", got '" + s + "'");
}

std::optional<double> opt_number(const json& v) {
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
}

}  // namespace

json default_document() {
    const ModelConfig m;
    const sensing::SenseOptions s;
    const CorrelationOptions c;
    return json{
        {"metal",
         {{"n_inf", 3.16}, {"omega_p", m.metal.omega_p}, {"gamma_p", m.metal.gamma_p}, {"lspr_target", nullptr}}},
        {"environment",
         {{"n", m.environment.n}, {"n_s", m.environment.n_s}, {"n_d", m.environment.n_d}, {"t", m.environment.t}}},
        {"geometry",
         {{"r", m.geometry.r},
          {"r_c", m.geometry.r_c},
          {"t_s", m.geometry.t_s},
          {"l", m.geometry.l},
          {"s_alpha", m.geometry.s_alpha},
          {"s_beta", m.geometry.s_beta}}},
        {"qd", {{"mu", m.qd.mu}, {"omega_ex", nullptr}, {"lambda_ex", *m.qd.lambda_ex}, {"gamma_ex", m.qd.gamma_ex}}},
        {"drive", {{"I0", m.I0}}},
        {"detector", {{"xi", m.detector.xi}, {"T_int", m.detector.T_int}, {"duty", m.detector.duty}}},
        {"conventions",
         {{"wavenumber", "cyclic"}, {"field_index_power", 2}, {"saturation", "bloch"}, {"emission", "plasmon"}}},
        {"solver",
         {{"fock_dim", s.solver.fock_dim},
          {"residual_tol", s.solver.residual_tol},
          {"convergence_dims", nullptr},
          {"convergence_tol", 1e-4}}},
        {"grids",
         {{"spectrum", window_json(520.0, 590.0, 0.05)},
          {"plasmon", window_json(s.plasmon->lo, s.plasmon->hi, s.plasmon->step)},
          {"fano", window_json(s.fano->lo, s.fano->hi, s.fano->step)},
          {"n", window_json(s.n.lo, s.n.hi, s.n.step)},
          {"anchor", "edge"},
          {"engine", "analytic"}}},
        {"correlations", {{"lambda", c.lambda}, {"tau_max", c.tau_max}, {"tau_step", c.tau_step}, {"orders", c.orders}}},
        {"output", {{"dir", nullptr}, {"plot", false}}},
    };
}

json merge_document(const json& user) {
    const json defaults = default_document();
    json doc = defaults;
    if (!user.is_null()) merge_into(doc, user, defaults, "");
    return doc;
}

json load_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config", "cannot open " + path.string());
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
}

void apply_override(json& doc, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) throw ConfigError("set", "expected KEY=VAL, got '" + std::string(assignment) + "'");
    const std::string key(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;

    json patch = value;
    std::vector<std::string> parts;
    std::stringstream ss(key);
    for (std::string part; std::getline(ss, part, '.');) parts.push_back(part);
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) patch = json{{*it, patch}};
    merge_into(doc, patch, default_document(), "");
}

RunConfig resolve(const json& doc) {
    RunConfig rc;
    rc.document = doc;
    rc.hash = config_hash(doc);
    auto& m = rc.model;

    try {
        const auto& metal = doc.at("metal");
        const double n_inf = metal.at("n_inf").get<double>();
        if (!(n_inf >= 1.0)) throw ConfigError("metal.n_inf", "must be >= 1");
        m.metal.eps_inf = n_inf * n_inf;
        m.metal.omega_p = metal.at("omega_p").get<double>();
        m.metal.gamma_p = metal.at("gamma_p").get<double>();
        m.lspr_target = opt_number(metal.at("lspr_target"));

        const auto& env = doc.at("environment");
        m.environment = {env.at("n").get<double>(), env.at("n_s").get<double>(), env.at("n_d").get<double>(),
                         env.at("t").get<double>()};

        const auto& g = doc.at("geometry");
        m.geometry = {g.at("r").get<double>(),  g.at("r_c").get<double>(),   g.at("t_s").get<double>(),
                      g.at("l").get<double>(),  g.at("s_alpha").get<int>(), g.at("s_beta").get<int>()};

        const auto& qd = doc.at("qd");
        m.qd.mu = qd.at("mu").get<double>();
        m.qd.omega_ex = opt_number(qd.at("omega_ex"));
        m.qd.lambda_ex = opt_number(qd.at("lambda_ex"));
        m.qd.gamma_ex = qd.at("gamma_ex").get<double>();

        m.I0 = doc.at("drive").at("I0").get<double>();
        const auto& det = doc.at("detector");
        m.detector = {det.at("xi").get<double>(), det.at("T_int").get<double>(), det.at("duty").get<double>()};

        const auto& conv = doc.at("conventions");
        m.conventions.wavenumber = pick<materials::Wavenumber>(
            conv.at("wavenumber"), "conventions.wavenumber",
            {{"cyclic", materials::Wavenumber::cyclic}, {"angular", materials::Wavenumber::angular}});
        m.conventions.field_index_power = conv.at("field_index_power").get<int>();
        m.conventions.saturation = pick<SaturationForm>(conv.at("saturation"), "conventions.saturation",
                                                        {{"bloch", SaturationForm::bloch}, {"printed", SaturationForm::printed}});
        m.conventions.emission = pick<Emission>(conv.at("emission"), "conventions.emission",
                                                {{"plasmon", Emission::plasmon}, {"full", Emission::full}});
        m.validate();

        const auto& solver = doc.at("solver");
        rc.solver.fock_dim = solver.at("fock_dim").get<int>();
        rc.solver.residual_tol = solver.at("residual_tol").get<double>();
        if (rc.solver.fock_dim < 2) throw ConfigError("solver.fock_dim", "must be >= 2");
        if (rc.solver.fock_dim > 40) throw ConfigError("solver.fock_dim", "must be <= 40");
        if (!(rc.solver.residual_tol > 0.0)) throw ConfigError("solver.residual_tol", "must be > 0");
        rc.convergence_tol = solver.at("convergence_tol").get<double>();
        if (!(rc.convergence_tol > 0.0)) throw ConfigError("solver.convergence_tol", "must be > 0");
        if (solver.at("convergence_dims").is_null()) {
            const int n = rc.solver.fock_dim;
            rc.convergence_dims = {std::max(2, n - 2), n, n + 2};
        } else {
            rc.convergence_dims = solver.at("convergence_dims").get<std::vector<int>>();
            if (rc.convergence_dims.size() < 2) throw ConfigError("solver.convergence_dims", "needs at least two entries");
            for (int d : rc.convergence_dims)
                if (d < 2 || d > 40) throw ConfigError("solver.convergence_dims", "entries must be in 2..40");
        }

        const auto& grids = doc.at("grids");
        rc.spectrum = window_from(grids.at("spectrum"), "grids.spectrum");
        auto& s = rc.sense;
        s.plasmon = grids.at("plasmon").is_null() ? std::nullopt
                                                  : std::optional(window_from(grids.at("plasmon"), "grids.plasmon"));
        s.fano = grids.at("fano").is_null() ? std::nullopt : std::optional(window_from(grids.at("fano"), "grids.fano"));
        if (s.fano && s.fano->step > 2e-4 + 1e-12) throw ConfigError("grids.fano.step", "must be <= 2e-4 nm");
        if (!s.plasmon && !s.fano) throw ConfigError("grids", "at least one of plasmon and fano must be set");
        s.n = window_from(grids.at("n"), "grids.n");
        if (!(s.n.lo >= 1.0)) throw ConfigError("grids.n.min", "must be >= 1");
        s.anchor = pick<sensing::Anchor>(grids.at("anchor"), "grids.anchor",
                                         {{"edge", sensing::Anchor::edge}, {"midpoint", sensing::Anchor::midpoint}});
        s.engine = pick<sensing::Engine>(grids.at("engine"), "grids.engine",
                                         {{"analytic", sensing::Engine::analytic}, {"lindblad", sensing::Engine::lindblad}});
        s.solver = rc.solver;

        const auto& corr = doc.at("correlations");
        rc.correlations.lambda = corr.at("lambda").get<double>();
        rc.correlations.tau_max = corr.at("tau_max").get<double>();
        rc.correlations.tau_step = corr.at("tau_step").get<double>();
        rc.correlations.orders = corr.at("orders").get<std::vector<int>>();
        if (!(rc.correlations.lambda > 0.0)) throw ConfigError("correlations.lambda", "must be > 0");
        if (!(rc.correlations.tau_max >= 0.0) || !std::isfinite(rc.correlations.tau_max))
            throw ConfigError("correlations.tau_max", "must be >= 0");
        if (!(rc.correlations.tau_step > 0.0)) throw ConfigError("correlations.tau_step", "must be > 0");
        if (rc.correlations.orders.empty()) throw ConfigError("correlations.orders", "must not be empty");
        for (int o : rc.correlations.orders)
            if (o < 2 || o > 4) throw ConfigError("correlations.orders", "orders must be 2, 3 or 4");

        const auto& out = doc.at("output");
        rc.output_dir = out.at("dir").is_null() ? "" : out.at("dir").get<std::string>();
        rc.plot = out.at("plot").get<bool>();
    } catch (const json::exception& e) {
        throw ConfigError("config", std::string("malformed document: ") + e.what());
    }
    return rc;
}

std::string config_hash(const json& doc) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char ch : doc.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

sensing::Window parse_window(const std::string& text, const std::string& path) {
    std::vector<double> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ConfigError(path, "expected min:max:step, got '" + text + "'");
        }
    }
    if (parts.size() != 3) throw ConfigError(path, "expected min:max:step, got '" + text + "'");
    return window_from(json{{"min", parts[0]}, {"max", parts[1]}, {"step", parts[2]}}, path);
}

}  // namespace fanosense::config
