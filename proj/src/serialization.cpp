#include "nescape/serialization.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

namespace nescape::io {

namespace {

double need_number(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw SchemaError(ctx + ": missing numeric field '" + key + "'");
    return j.at(key).get<double>();
}

std::string need_string(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw SchemaError(ctx + ": missing string field '" + key + "'");
    return j.at(key).get<std::string>();
}

geom::Window window_from_json(const json& j) {
    geom::Window w;
    try {
        w.component = geom::component_from_string(need_string(j, "component", "window"));
        w.convention = geom::convention_from_string(need_string(j, "convention", "window"));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("window: ") + e.what());
    }
    w.center = need_number(j, "center", "window");
    w.half_width = need_number(j, "half_width", "window");
    return w;
}

}  // namespace

std::string GeometrySpec::kind() const {
    return is_planar() ? planar().kind() : spherical().kind();
}

double GeometrySpec::area() const {
    return is_planar() ? planar().area() : spherical().area();
}

GeometrySpec geometry_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("geometry: expected a JSON object");
    const std::string type = need_string(j, "type", "geometry");
    const json params = j.contains("params") ? j.at("params") : json::object();
    try {
        std::optional<GeometrySpec> spec;
        if (type == "disk") {
            spec = {geom::PlanarDomain::disk(need_number(params, "R", type)), std::nullopt};
        } else if (type == "annulus") {
            spec = {geom::PlanarDomain::annulus(need_number(params, "R1", type),
                                                need_number(params, "R2", type)),
                    std::nullopt};
        } else if (type == "rectangle") {
            spec = {geom::PlanarDomain::rectangle(need_number(params, "a", type),
                                                  need_number(params, "b", type)),
                    std::nullopt};
        } else if (type == "tangent_circles") {
            spec = {geom::PlanarDomain::tangent_circles(need_number(params, "R", type),
                                                        need_number(params, "d", type)),
                    std::nullopt};
        } else if (type == "sphere") {
            spec = {geom::SphericalDomain::full_sphere(need_number(params, "R", type)),
                    std::nullopt};
        } else if (type == "decapitated_sphere") {
            spec = {geom::SphericalDomain::decapitated(need_number(params, "R", type),
                                                       need_number(params, "delta", type)),
                    std::nullopt};
        } else {
            throw SchemaError("geometry: unknown type '" + type + "'");
        }
        if (j.contains("window") && !j.at("window").is_null()) {
            spec->window = window_from_json(j.at("window"));
            // validate against the domain now so failures carry context
            if (spec->is_planar())
                geom::window_measures(*spec->window, spec->planar());
            else
                geom::window_measures(*spec->window, spec->spherical());
        }
        return *spec;
    } catch (const std::invalid_argument& e) {
        throw SchemaError("geometry '" + type + "': " + e.what());
    } catch (const std::domain_error& e) {
        throw SchemaError("geometry '" + type + "': " + e.what());
    }
}

json geometry_to_json(const GeometrySpec& g) {
    json j;
    j["type"] = g.kind();
    json params;
    if (g.is_planar()) {
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, geom::Disk>) {
                    params["R"] = s.R;
                } else if constexpr (std::is_same_v<T, geom::Annulus>) {
                    params["R1"] = s.R1;
                    params["R2"] = s.R2;
                } else if constexpr (std::is_same_v<T, geom::Rectangle>) {
                    params["a"] = s.a;
                    params["b"] = s.b;
                } else {
                    params["R"] = s.R;
                    params["d"] = s.d;
                }
            },
            g.planar().shape());
    } else {
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                params["R"] = s.R;
                if constexpr (std::is_same_v<T, geom::DecapitatedSphere>) {
                    params["delta"] = s.delta;
                }
            },
            g.spherical().shape());
    }
    j["params"] = params;
    if (g.window) {
        j["window"] = {{"component", geom::to_string(g.window->component)},
                       {"center", g.window->center},
                       {"half_width", g.window->half_width},
                       {"convention", geom::to_string(g.window->convention)}};
    }
    return j;
}

GeometrySpec geometry_from_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    if (kv.find("type") == kv.end()) throw SchemaError("key=value geometry: missing 'type'");

    json j;
    j["type"] = kv["type"];
    json params = json::object();
    json window = json::object();
    for (const auto& [key, val] : kv) {
        if (key == "type") continue;
        const bool is_window = key.rfind("window.", 0) == 0;
        std::string name = is_window ? key.substr(7) : key;
        json& target = is_window ? window : params;
        if (name == "component" || name == "convention") {
            target[name] = val;
        } else {
            try {
                target[name] = std::stod(val);
            } catch (const std::exception&) {
                throw SchemaError("key=value geometry: non-numeric value for '" + key + "'");
            }
        }
    }
    j["params"] = params;
    if (!window.empty()) j["window"] = window;
    return geometry_from_json(j);
}

GeometrySpec geometry_from_text(const std::string& text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '{') return geometry_from_json(json::parse(text));
        break;
    }
    return geometry_from_kv(text);
}

json to_json(const asym::AsymptoticResult& r) {
    json terms = json::array();
    for (const auto& t : r.terms) terms.push_back({{"name", t.name}, {"value", t.value}});
    json j{{"value", r.value},
           {"terms", terms},
           {"error_order", r.error_order},
           {"convention", r.convention},
           {"warnings", r.warnings}};
    if (!r.aux.empty()) {
        json aux = json::array();
        for (const auto& t : r.aux) aux.push_back({{"name", t.name}, {"value", t.value}});
        j["aux"] = aux;
    }
    return j;
}

asym::AsymptoticResult asymptotic_from_json(const json& j) {
    asym::AsymptoticResult r;
    r.value = j.at("value").get<double>();
    for (const auto& t : j.at("terms"))
        r.terms.push_back({t.at("name").get<std::string>(), t.at("value").get<double>()});
    r.error_order = j.at("error_order").get<std::string>();
    r.convention = j.value("convention", "");
    if (j.contains("warnings"))
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (j.contains("aux"))
        for (const auto& t : j.at("aux"))
            r.aux.push_back({t.at("name").get<std::string>(), t.at("value").get<double>()});
    return r;
}

json to_json(const dual::SeriesSolution& s) {
    return json{{"c", s.c},
                {"c0", s.c.empty() ? 0.0 : s.c[0]},
                {"compatibility_residual", s.compatibility_residual},
                {"method", s.method},
                {"residuals",
                 {{"dirichlet", s.dirichlet_residual},
                  {"flux", s.flux_residual},
                  {"condition", s.condition_estimate},
                  {"operator_norm", s.operator_norm}}}};
}

dual::SeriesSolution series_from_json(const json& j) {
    dual::SeriesSolution s;
    s.c = j.at("c").get<std::vector<double>>();
    s.compatibility_residual = j.at("compatibility_residual").get<double>();
    s.method = j.at("method").get<std::string>();
    const auto& r = j.at("residuals");
    s.dirichlet_residual = r.at("dirichlet").get<double>();
    s.flux_residual = r.at("flux").get<double>();
    s.condition_estimate = r.at("condition").get<double>();
    s.operator_norm = r.at("operator_norm").get<double>();
    return s;
}

json to_json(const mc::McEstimate& e) {
    json j{{"mean", e.mean},
           {"stderr", e.std_error},
           {"n_absorbed", e.n_absorbed},
           {"n_censored", e.n_censored},
           {"dt_used", e.dt_used}};
    if (!e.warnings.empty()) j["warnings"] = e.warnings;
    return j;
}

mc::McEstimate estimate_from_json(const json& j) {
    mc::McEstimate e;
    e.mean = j.at("mean").get<double>();
    e.std_error = j.at("stderr").get<double>();
    e.n_absorbed = j.at("n_absorbed").get<long>();
    e.n_censored = j.at("n_censored").get<long>();
    e.dt_used = j.at("dt_used").get<double>();
    if (j.contains("warnings")) e.warnings = j.at("warnings").get<std::vector<std::string>>();
    return e;
}

json to_json(const std::vector<mc::SweepRow>& rows) {
    json arr = json::array();
    for (const auto& row : rows) {
        json r = to_json(row.estimate);
        r["epsilon"] = row.eps;
        arr.push_back(r);
    }
    return arr;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sweep_to_csv(const std::vector<mc::SweepRow>& rows) {
    std::string out = "epsilon,mean,stderr,n_absorbed,n_censored\n";
    for (const auto& row : rows) {
        out += format_double(row.eps) + "," + format_double(row.estimate.mean) + "," +
               format_double(row.estimate.std_error) + "," +
               std::to_string(row.estimate.n_absorbed) + "," +
               std::to_string(row.estimate.n_censored) + "\n";
    }
    return out;
}

std::vector<mc::SweepRow> sweep_from_csv(const std::string& text) {
    std::vector<mc::SweepRow> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 5) throw SchemaError("sweep csv: expected 5 columns");
        mc::SweepRow row;
        row.eps = std::stod(fields[0]);
        row.estimate.mean = std::stod(fields[1]);
        row.estimate.std_error = std::stod(fields[2]);
        row.estimate.n_absorbed = std::stol(fields[3]);
        row.estimate.n_censored = std::stol(fields[4]);
        rows.push_back(row);
    }
    return rows;
}

std::string asymptotic_to_csv(const asym::AsymptoticResult& r) {
    std::string out = "term,value\n";
    for (const auto& t : r.terms) out += t.name + "," + format_double(t.value) + "\n";
    out += "total," + format_double(r.value) + "\n";
    return out;
}

std::string flux_to_csv(const dual::SeriesSolution& s) {
    std::string out = "angle,flux\n";
    for (const auto& [angle, flux] : s.flux_profile)
        out += format_double(angle) + "," + format_double(flux) + "\n";
    return out;
}

}  // namespace nescape::io
