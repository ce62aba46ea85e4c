#include "madelung/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "madelung/hashing.hpp"

namespace madelung {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const char* ctx) {
    for (const auto& item : obj.items()) {
        if (allowed.find(item.key()) == allowed.end()) {
            throw SchemaError(std::string("unknown key '") + item.key() + "' in " + ctx);
        }
    }
}

const json& need(const json& obj, const char* key, const char* ctx) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw SchemaError(std::string("missing key '") + key + "' in " + ctx);
    }
    return *it;
}

double as_number(const json& v, const std::string& what) {
    if (!v.is_number()) {
        throw SchemaError(what + " must be a number");
    }
    return v.get<double>();
}

int as_int(const json& v, const std::string& what) {
    if (!v.is_number_integer()) {
        throw SchemaError(what + " must be an integer");
    }
    return v.get<int>();
}

std::string as_string(const json& v, const std::string& what) {
    if (!v.is_string()) {
        throw SchemaError(what + " must be a string");
    }
    return v.get<std::string>();
}

double opt_number(const json& obj, const char* key, double fallback, const char* ctx) {
    auto it = obj.find(key);
    return it == obj.end() ? fallback : as_number(*it, std::string(ctx) + "." + key);
}

int opt_int(const json& obj, const char* key, int fallback, const char* ctx) {
    auto it = obj.find(key);
    return it == obj.end() ? fallback : as_int(*it, std::string(ctx) + "." + key);
}

GridSpec default_grid(Scenario scenario, int n) {
    GridSpec g;
    if (scenario == Scenario::free_particle) {
        g = GridSpec{-10.0, 10.0, 201, 0.0, 10.0, 201, {}};
    } else if (n == 1) {
        g = GridSpec{-4.0, 4.0, 201, 0.0, 10.0, 201, {}};
    } else {
        g = GridSpec{0.1, 4.0, 196, 0.0, 10.0, 201, {}};
    }
    return g;
}

std::vector<std::string> default_outputs(Scenario scenario, int n) {
    if (scenario == Scenario::free_particle) {
        return {"bohm", "density", "phase"};
    }
    if (n == 1) {
        return {"bohm", "density", "phase", "potential"};
    }
    return {"amplitude_im", "amplitude_re", "bohm", "density", "phase", "potential"};
}

}  // namespace

std::string to_string(Scenario s) {
    return s == Scenario::free_particle ? "free_particle" : "waveguide";
}

std::string to_string(Route r) { return r == Route::closed ? "closed" : "pipeline"; }

const std::vector<std::string>& allowed_outputs() {
    static const std::vector<std::string> names = {
        "amplitude_im", "amplitude_re", "bohm", "density", "phase", "potential",
        "residuals"};
    return names;
}

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("configuration is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw SchemaError("configuration root must be an object");
    }
    check_keys(doc,
               {"scenario", "route", "params", "grid", "stencil", "truncation", "outputs",
                "out_dir", "raster_cap", "residual_cap", "thresholds"},
               "configuration");

    RunConfig cfg;

    const std::string scenario = as_string(need(doc, "scenario", "configuration"), "scenario");
    if (scenario == "free_particle") {
        cfg.scenario = Scenario::free_particle;
    } else if (scenario == "waveguide") {
        cfg.scenario = Scenario::waveguide;
    } else {
        throw SchemaError("scenario must be 'free_particle' or 'waveguide'");
    }

    const json params = doc.contains("params") ? doc["params"] : json::object();
    if (!params.is_object()) {
        throw SchemaError("params must be an object");
    }

    int n = 1;
    if (cfg.scenario == Scenario::free_particle) {
        check_keys(params, {"eta", "kappa", "c1", "c2_sign", "c3"}, "params");
        FreeParticleParams p;
        p.eta = as_number(need(params, "eta", "params"), "params.eta");
        p.kappa = as_number(need(params, "kappa", "params"), "params.kappa");
        p.c1 = as_number(need(params, "c1", "params"), "params.c1");
        p.c2_sign = opt_int(params, "c2_sign", 1, "params");
        p.c3 = opt_number(params, "c3", 0.0, "params");
        p.validate();
        cfg.free_particle = p;
    } else {
        check_keys(params, {"n", "c"}, "params");
        n = opt_int(params, "n", 1, "params");
        const double c = opt_number(params, "c", 0.0, "params");
        cfg.waveguide = WaveguideParams(n, c);  // validates n
    }

    if (doc.contains("route")) {
        const std::string route = as_string(doc["route"], "route");
        if (route == "closed") {
            cfg.route = Route::closed;
        } else if (route == "pipeline") {
            cfg.route = Route::pipeline;
        } else {
            throw SchemaError("route must be 'closed' or 'pipeline'");
        }
    } else {
        cfg.route = (cfg.scenario == Scenario::waveguide && n > 1) ? Route::pipeline
                                                                   : Route::closed;
    }
    if (cfg.scenario == Scenario::waveguide && n > 1 && cfg.route == Route::closed) {
        throw InvariantViolation("closed-form route exists only for n = 1");
    }

    cfg.grid = default_grid(cfg.scenario, n);
    if (cfg.scenario == Scenario::free_particle && cfg.route == Route::pipeline &&
        !doc.contains("grid")) {
        cfg.grid.nx = 200;  // keep x = 0 (where Q' vanishes) off the default grid
    }
    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        if (!g.is_object()) {
            throw SchemaError("grid must be an object");
        }
        check_keys(g, {"x_min", "x_max", "nx", "t_min", "t_max", "nt", "exclusions"},
                   "grid");
        cfg.grid.x_min = opt_number(g, "x_min", cfg.grid.x_min, "grid");
        cfg.grid.x_max = opt_number(g, "x_max", cfg.grid.x_max, "grid");
        cfg.grid.nx = opt_int(g, "nx", cfg.grid.nx, "grid");
        cfg.grid.t_min = opt_number(g, "t_min", cfg.grid.t_min, "grid");
        cfg.grid.t_max = opt_number(g, "t_max", cfg.grid.t_max, "grid");
        cfg.grid.nt = opt_int(g, "nt", cfg.grid.nt, "grid");
        if (g.contains("exclusions")) {
            const json& zones = g["exclusions"];
            if (!zones.is_array()) {
                throw SchemaError("grid.exclusions must be an array");
            }
            for (const json& z : zones) {
                if (!z.is_object()) {
                    throw SchemaError("each exclusion must be an object");
                }
                check_keys(z, {"center", "radius"}, "grid.exclusions[]");
                ExclusionZone zone;
                zone.center = as_number(need(z, "center", "exclusion"), "exclusion.center");
                zone.radius = as_number(need(z, "radius", "exclusion"), "exclusion.radius");
                cfg.grid.exclusions.push_back(zone);
            }
        }
    }
    cfg.grid.validate();

    if (doc.contains("stencil")) {
        const json& s = doc["stencil"];
        if (!s.is_object()) {
            throw SchemaError("stencil must be an object");
        }
        check_keys(s, {"dx", "dt", "order"}, "stencil");
        cfg.stencil.dx = opt_number(s, "dx", cfg.stencil.dx, "stencil");
        cfg.stencil.dt = opt_number(s, "dt", cfg.stencil.dt, "stencil");
        cfg.stencil.order = opt_int(s, "order", cfg.stencil.order, "stencil");
    }
    cfg.stencil.validate(cfg.grid);

    if (doc.contains("truncation")) {
        const json& tr = doc["truncation"];
        if (!tr.is_object()) {
            throw SchemaError("truncation must be an object");
        }
        check_keys(tr, {"k_max", "tail_tol"}, "truncation");
        cfg.truncation = TruncationPolicy(opt_int(tr, "k_max", cfg.truncation.k_max, "truncation"),
                                          opt_number(tr, "tail_tol", cfg.truncation.tail_tol,
                                                     "truncation"));
    }

    if (doc.contains("outputs")) {
        const json& outs = doc["outputs"];
        if (!outs.is_array()) {
            throw SchemaError("outputs must be an array of field names");
        }
        std::set<std::string> unique;
        for (const json& o : outs) {
            const std::string name = as_string(o, "outputs entry");
            const auto& allowed = allowed_outputs();
            if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
                throw SchemaError("unknown output field '" + name + "'");
            }
            unique.insert(name);
        }
        cfg.outputs.assign(unique.begin(), unique.end());
    } else {
        cfg.outputs = default_outputs(cfg.scenario, n);
    }

    if (doc.contains("out_dir")) {
        cfg.out_dir = as_string(doc["out_dir"], "out_dir");
        if (cfg.out_dir.empty()) {
            throw SchemaError("out_dir must not be empty");
        }
    }

    cfg.raster_cap = opt_number(doc, "raster_cap", cfg.raster_cap, "configuration");
    cfg.residual_cap = opt_number(doc, "residual_cap", cfg.residual_cap, "configuration");
    if (!(cfg.raster_cap > 0.0) || !(cfg.residual_cap > 0.0)) {
        throw InvariantViolation("raster_cap and residual_cap must be positive");
    }

    cfg.thresholds = {{"continuity", 1e-6}, {"qhj", 1e-6}, {"schrodinger", 1e-6}};
    if (doc.contains("thresholds")) {
        const json& th = doc["thresholds"];
        if (!th.is_object()) {
            throw SchemaError("thresholds must be an object");
        }
        check_keys(th, {"schrodinger", "continuity", "qhj"}, "thresholds");
        for (const auto& item : th.items()) {
            const double v = as_number(item.value(), "thresholds." + item.key());
            if (!(v > 0.0)) {
                throw InvariantViolation("thresholds must be positive");
            }
            cfg.thresholds[item.key()] = v;
        }
    }

    // Canonical echo with every default materialized; nlohmann objects keep
    // keys sorted, so the dump is deterministic.
    json canonical;
    canonical["scenario"] = to_string(cfg.scenario);
    canonical["route"] = to_string(cfg.route);
    if (cfg.scenario == Scenario::free_particle) {
        const FreeParticleParams& p = *cfg.free_particle;
        canonical["params"] = {{"eta", p.eta},
                               {"kappa", p.kappa},
                               {"c1", p.c1},
                               {"c2_sign", p.c2_sign},
                               {"c3", p.c3}};
    } else {
        canonical["params"] = {{"n", cfg.waveguide->n}, {"c", cfg.waveguide->c}};
    }
    json zones = json::array();
    for (const ExclusionZone& z : cfg.grid.exclusions) {
        zones.push_back({{"center", z.center}, {"radius", z.radius}});
    }
    canonical["grid"] = {{"x_min", cfg.grid.x_min}, {"x_max", cfg.grid.x_max},
                         {"nx", cfg.grid.nx},       {"t_min", cfg.grid.t_min},
                         {"t_max", cfg.grid.t_max}, {"nt", cfg.grid.nt},
                         {"exclusions", zones}};
    canonical["stencil"] = {{"dx", cfg.stencil.dx},
                            {"dt", cfg.stencil.dt},
                            {"order", cfg.stencil.order}};
    canonical["truncation"] = {{"k_max", cfg.truncation.k_max},
                               {"tail_tol", cfg.truncation.tail_tol}};
    canonical["outputs"] = cfg.outputs;
    canonical["raster_cap"] = cfg.raster_cap;
    canonical["residual_cap"] = cfg.residual_cap;
    canonical["thresholds"] = cfg.thresholds;
    cfg.hash = hex16(fnv1a64(canonical.dump()));

    canonical["out_dir"] = cfg.out_dir;  // echoed but not fingerprinted
    cfg.canonical_text = canonical.dump(2);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open configuration file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("read failure on " + path.string());
    }
    return parse_config(buffer.str());
}

}  // namespace madelung
