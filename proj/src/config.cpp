#include "zaremba/app/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace zaremba::app {

namespace {

void check_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw config_error(where + ": expected an object");
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    check_object(j, where);
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok |= it.key() == a;
        if (!ok) throw config_error(where + ": unknown key '" + it.key() + "'");
    }
}

double get_number(const json& j, const char* key, double def, const std::string& where) {
    if (!j.contains(key)) return def;
    const json& v = j.at(key);
    if (!v.is_number()) throw config_error(where + "." + key + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw config_error(where + "." + key + ": must be finite");
    return d;
}

int get_int(const json& j, const char* key, int def, const std::string& where) {
    if (!j.contains(key)) return def;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw config_error(where + "." + key + ": expected an integer");
    return v.get<int>();
}

bool get_bool(const json& j, const char* key, bool def, const std::string& where) {
    if (!j.contains(key)) return def;
    const json& v = j.at(key);
    if (!v.is_boolean()) throw config_error(where + "." + key + ": expected true or false");
    return v.get<bool>();
}

std::string get_string(const json& j, const char* key, const std::string& def, const std::string& where) {
    if (!j.contains(key)) return def;
    const json& v = j.at(key);
    if (!v.is_string()) throw config_error(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

Vec2 to_point(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw config_error(where + ": expected a point [x1, x2]");
    return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<double> to_numbers(const json& v, const std::string& where) {
    if (!v.is_array()) throw config_error(where + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw config_error(where + ": expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

json point_json(Vec2 p) { return json::array({p.x, p.y}); }

void parse_geometry(const json& g, RunConfig& c) {
    const std::string w = "geometry";
    check_keys(g, w, {"curve", "radius", "semi_axes", "coefficients"});
    c.curve_kind = get_string(g, "curve", "kite", w);
    if (c.curve_kind == "kite") {
        c.curve = make_kite();
    } else if (c.curve_kind == "disc") {
        c.radius = get_number(g, "radius", 1.0, w);
        if (!(c.radius > 0.0)) throw config_error("geometry.radius must be positive");
        c.curve = make_disc(c.radius);
    } else if (c.curve_kind == "ellipse") {
        if (g.contains("semi_axes")) {
            const Vec2 ab = to_point(g.at("semi_axes"), w + ".semi_axes");
            c.semi_a = ab.x;
            c.semi_b = ab.y;
        }
        if (!(c.semi_a > 0.0 && c.semi_b > 0.0)) throw config_error("geometry.semi_axes must be positive");
        c.curve = make_ellipse(c.semi_a, c.semi_b);
    } else if (c.curve_kind == "trig") {
        if (!g.contains("coefficients")) throw config_error("geometry.coefficients is required for curve 'trig'");
        const json& co = g.at("coefficients");
        check_keys(co, w + ".coefficients", {"a1", "b1", "a2", "b2"});
        for (const char* key : {"a1", "b1", "a2", "b2"})
            if (!co.contains(key)) throw config_error(w + ".coefficients." + key + " is required");
        c.a1 = to_numbers(co.at("a1"), w + ".coefficients.a1");
        c.b1 = to_numbers(co.at("b1"), w + ".coefficients.b1");
        c.a2 = to_numbers(co.at("a2"), w + ".coefficients.a2");
        c.b2 = to_numbers(co.at("b2"), w + ".coefficients.b2");
        const std::size_t m = c.a1.size();
        if (m < 2 || c.b1.size() != m || c.a2.size() != m || c.b2.size() != m)
            throw config_error("geometry.coefficients: the four lists need equal length >= 2");
        c.curve = Curve(c.a1, c.b1, c.a2, c.b2, "trig");
    } else {
        throw config_error("geometry.curve must be one of kite, disc, ellipse, trig");
    }
    if (c.curve_kind != "disc" && g.contains("radius")) throw config_error("geometry.radius applies to curve 'disc' only");
    if (c.curve_kind != "ellipse" && g.contains("semi_axes"))
        throw config_error("geometry.semi_axes applies to curve 'ellipse' only");
    if (c.curve_kind != "trig" && g.contains("coefficients"))
        throw config_error("geometry.coefficients applies to curve 'trig' only");
    try {
        c.curve.validate();
    } catch (const geometry_error& e) {
        throw config_error(std::string("geometry: ") + e.what());
    }
}

void parse_partition(const json* p, RunConfig& c) {
    try {
        if (!p) {
            c.partition = c.curve_kind == "kite" ? kite_default_partition() : half_half_partition();
        } else if (p->is_string()) {
            if (p->get<std::string>() != "dirichlet") throw config_error("partition: the only named partition is 'dirichlet'");
            c.partition = dirichlet_partition();
        } else {
            if (!p->is_array() || p->empty()) throw config_error("partition: expected a list of [t_start, t_end, \"D\"|\"N\"]");
            std::vector<Segment> segs;
            for (const auto& e : *p) {
                if (!e.is_array() || e.size() != 3 || !e[0].is_number() || !e[1].is_number() || !e[2].is_string())
                    throw config_error("partition: expected a list of [t_start, t_end, \"D\"|\"N\"]");
                const std::string kind = e[2].get<std::string>();
                if (kind != "D" && kind != "N") throw config_error("partition: condition must be \"D\" or \"N\"");
                segs.push_back({e[0].get<double>(), e[1].get<double>(),
                                kind == "D" ? BoundaryKind::Dirichlet : BoundaryKind::Neumann});
            }
            c.partition = Partition(segs);
        }
    } catch (const geometry_error& e) {
        throw config_error(std::string("partition: ") + e.what());
    }
    c.segments = c.partition.segments();
}

void parse_discretization(const json& d, RunConfig& c) {
    const std::string w = "discretization";
    check_keys(d, w, {"n", "fc_bandwidth", "svd_cutoff", "weight_exponent", "k_design", "panel_factor"});
    c.n = get_int(d, "n", c.n, w);
    if (c.n < 8) throw config_error("discretization.n must be >= 8");
    c.fc_bandwidth = get_int(d, "fc_bandwidth", -1, w);
    c.svd_cutoff = get_number(d, "svd_cutoff", c.svd_cutoff, w);
    if (!(c.svd_cutoff > 0.0 && c.svd_cutoff < 1.0)) throw config_error("discretization.svd_cutoff must lie in (0, 1)");
    c.weight_exponent = get_number(d, "weight_exponent", c.weight_exponent, w);
    if (c.weight_exponent < 0.0) throw config_error("discretization.weight_exponent must be >= 0");
    if (d.contains("k_design") && !d.at("k_design").is_null()) {
        c.k_design = get_number(d, "k_design", 0.0, w);
        if (!(*c.k_design > 0.0)) throw config_error("discretization.k_design must be positive");
    }
    c.panel_factor = get_number(d, "panel_factor", c.panel_factor, w);
    if (!(c.panel_factor >= 0.25)) throw config_error("discretization.panel_factor must be >= 0.25");
}

void parse_problem(const json& p, RunConfig& c) {
    const std::string w = "problem";
    check_keys(p, w, {"mode", "k", "gamma", "alpha", "source", "observables", "guard", "n_list", "eigs"});
    const std::string mode = get_string(p, "mode", "scattering", w);
    if (mode == "scattering")
        c.mode = ProblemMode::Scattering;
    else if (mode == "bvp")
        c.mode = ProblemMode::Bvp;
    else
        throw config_error("problem.mode must be 'scattering' or 'bvp'");
    c.k = get_number(p, "k", c.k, w);
    if (!(c.k > 0.0)) throw config_error("problem.k must be positive");
    c.gamma = get_int(p, "gamma", -1, w);
    if (c.gamma != 1 && c.gamma != -1) throw config_error("problem.gamma must be -1 (exterior) or +1 (interior)");
    if (c.mode == ProblemMode::Scattering && c.gamma != -1) throw config_error("scattering problems are exterior (gamma = -1)");
    c.alpha = get_number(p, "alpha", 0.0, w);
    if (p.contains("source")) c.source = to_point(p.at("source"), w + ".source");
    if (c.mode == ProblemMode::Bvp && !c.source) throw config_error("problem.source is required in bvp mode");
    if (c.mode == ProblemMode::Scattering && c.source) throw config_error("problem.source applies to bvp mode only");
    if (p.contains("observables")) {
        const json& o = p.at("observables");
        if (!o.is_array()) throw config_error("problem.observables: expected a list of points");
        c.observables.clear();
        for (const auto& e : o) c.observables.push_back(to_point(e, w + ".observables"));
    }
    if (p.contains("guard")) {
        const json& g = p.at("guard");
        const std::string wg = w + ".guard";
        check_keys(g, wg, {"enabled", "threshold", "delta", "m_samples", "force"});
        c.guard.enabled = get_bool(g, "enabled", true, wg);
        c.guard.config.threshold = get_number(g, "threshold", c.guard.config.threshold, wg);
        c.guard.config.delta = get_number(g, "delta", c.guard.config.delta, wg);
        c.guard.config.m_samples = get_int(g, "m_samples", c.guard.config.m_samples, wg);
        c.guard.config.force = get_bool(g, "force", false, wg);
    }
    c.guard.config.validate();
    if (p.contains("n_list")) {
        const json& l = p.at("n_list");
        if (!l.is_array()) throw config_error("problem.n_list: expected a list of integers");
        c.n_list.clear();
        for (const auto& e : l) {
            if (!e.is_number_integer()) throw config_error("problem.n_list: expected a list of integers");
            c.n_list.push_back(e.get<int>());
        }
    }
    if (p.contains("eigs")) {
        const json& e = p.at("eigs");
        const std::string we = w + ".eigs";
        check_keys(e, we, {"k_min", "k_max", "grid_points", "refine_tol"});
        c.eigs.k_min = get_number(e, "k_min", c.eigs.k_min, we);
        c.eigs.k_max = get_number(e, "k_max", c.eigs.k_max, we);
        c.eigs.grid_points = get_int(e, "grid_points", c.eigs.grid_points, we);
        c.eigs.refine_tol = get_number(e, "refine_tol", c.eigs.refine_tol, we);
    }
    c.eigs.validate();
}

void parse_output(const json& o, RunConfig& c) {
    const std::string w = "output";
    check_keys(o, w, {"density_csv", "grid", "eigenfunction_grid"});
    c.density_csv = get_bool(o, "density_csv", true, w);
    if (o.contains("grid")) {
        const json& g = o.at("grid");
        const std::string wg = w + ".grid";
        check_keys(g, wg, {"x_min", "x_max", "y_min", "y_max", "nx", "ny", "mode"});
        GridSpec& s = c.grid.spec;
        s.x_min = get_number(g, "x_min", s.x_min, wg);
        s.x_max = get_number(g, "x_max", s.x_max, wg);
        s.y_min = get_number(g, "y_min", s.y_min, wg);
        s.y_max = get_number(g, "y_max", s.y_max, wg);
        s.nx = get_int(g, "nx", s.nx, wg);
        s.ny = get_int(g, "ny", s.ny, wg);
        c.grid.mode = get_string(g, "mode", c.grid.mode, wg);
    }
    c.grid.spec.validate();
    if (c.grid.mode != "total" && c.grid.mode != "scattered" && c.grid.mode != "incident")
        throw config_error("output.grid.mode must be total, scattered or incident");
    c.eigenfunction_grid = get_int(o, "eigenfunction_grid", c.eigenfunction_grid, w);
    if (c.eigenfunction_grid < 0) throw config_error("output.eigenfunction_grid must be >= 0");
}

}  // namespace

DiscretizationOptions RunConfig::discretization(int n_override, double k_design_auto) const {
    DiscretizationOptions o;
    o.n = n_override > 0 ? n_override : n;
    o.fc.bandwidth = fc_bandwidth;
    o.fc.svd_cutoff = svd_cutoff;
    o.fc.weight_exponent = weight_exponent;
    o.k_design = k_design ? *k_design : k_design_auto;
    o.panel_factor = panel_factor;
    return o;
}

json RunConfig::echo(double k_design_resolved) const {
    json g;
    g["curve"] = curve_kind;
    if (curve_kind == "disc") g["radius"] = radius;
    if (curve_kind == "ellipse") g["semi_axes"] = json::array({semi_a, semi_b});
    if (curve_kind == "trig") g["coefficients"] = {{"a1", a1}, {"b1", b1}, {"a2", a2}, {"b2", b2}};

    json part = json::array();
    for (const auto& s : segments) part.push_back(json::array({s.t_start, s.t_end, std::string(1, kind_letter(s.kind))}));

    json d;
    d["n"] = n;
    d["fc_bandwidth"] = fc_bandwidth < 0 ? default_bandwidth(n) : fc_bandwidth;
    d["svd_cutoff"] = svd_cutoff;
    d["weight_exponent"] = weight_exponent;
    d["k_design"] = k_design ? *k_design : k_design_resolved;
    d["panel_factor"] = panel_factor;

    json p;
    p["mode"] = mode == ProblemMode::Scattering ? "scattering" : "bvp";
    p["k"] = k;
    p["gamma"] = gamma;
    p["alpha"] = alpha;
    if (source) p["source"] = point_json(*source);
    p["observables"] = json::array();
    for (const Vec2& x : observables) p["observables"].push_back(point_json(x));
    p["guard"] = {{"enabled", guard.enabled},
                  {"threshold", guard.config.threshold},
                  {"delta", guard.config.delta},
                  {"m_samples", guard.config.m_samples},
                  {"force", guard.config.force}};
    p["n_list"] = n_list;
    p["eigs"] = {{"k_min", eigs.k_min}, {"k_max", eigs.k_max}, {"grid_points", eigs.grid_points}, {"refine_tol", eigs.refine_tol}};

    json o;
    o["density_csv"] = density_csv;
    o["grid"] = {{"x_min", grid.spec.x_min}, {"x_max", grid.spec.x_max}, {"y_min", grid.spec.y_min},
                 {"y_max", grid.spec.y_max}, {"nx", grid.spec.nx},       {"ny", grid.spec.ny},
                 {"mode", grid.mode}};
    o["eigenfunction_grid"] = eigenfunction_grid;

    return {{"geometry", g}, {"partition", part}, {"discretization", d}, {"problem", p}, {"output", o}};
}

RunConfig parse_config(const json& doc) {
    check_keys(doc, "config", {"geometry", "partition", "discretization", "problem", "output"});
    RunConfig c;
    parse_geometry(doc.contains("geometry") ? doc.at("geometry") : json::object(), c);
    parse_partition(doc.contains("partition") ? &doc.at("partition") : nullptr, c);
    parse_discretization(doc.contains("discretization") ? doc.at("discretization") : json::object(), c);
    parse_problem(doc.contains("problem") ? doc.at("problem") : json::object(), c);
    parse_output(doc.contains("output") ? doc.at("output") : json::object(), c);

    if (c.fc_bandwidth >= 0 && (c.fc_bandwidth < 1 || c.fc_bandwidth > c.n - 1))
        throw config_error("discretization.fc_bandwidth must lie in [1, n - 1]");

    // sources and observables must sit on the correct sides of the curve
    const CurveSampler cs(c.curve);
    auto inside = [&](Vec2 x, const std::string& what) {
        if (cs.distance(x) < 1e-6) throw config_error(what + " lies on the boundary curve");
        return cs.winding_number(x) > 0.5;
    };
    const bool interior = c.gamma == 1;
    if (c.source && inside(*c.source, "problem.source") == interior)
        throw config_error(interior ? "problem.source must lie outside the curve for an interior problem"
                                    : "problem.source must lie inside the curve for an exterior problem");
    for (const Vec2& x : c.observables)
        if (inside(x, "observable") != interior)
            throw config_error(interior ? "observables must lie inside the curve for an interior problem"
                                        : "observables must lie outside the curve for an exterior problem");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

}  // namespace zaremba::app
