#include "zaremba/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include "zaremba/app/output.hpp"

namespace zaremba::app {

namespace {

using cvec = Eigen::VectorXcd;

json cjson(cplx v) { return {{"re", v.real()}, {"im", v.imag()}}; }
json point_json(Vec2 p) { return json::array({p.x, p.y}); }

std::string out_path(const CommandOptions& o, const std::string& name) {
    return (std::filesystem::path(o.out_dir) / name).string();
}

void prepare(RunConfig& cfg, const CommandOptions& o) {
    if (o.threads < 1) throw config_error("--threads must be >= 1");
    if (o.guard_threshold) {
        cfg.guard.config.threshold = *o.guard_threshold;
        cfg.guard.config.validate();
    }
    if (o.force_continuation) {
        cfg.guard.enabled = true;
        cfg.guard.config.force = true;
    }
    std::error_code ec;
    std::filesystem::create_directories(o.out_dir, ec);
    if (ec || !std::filesystem::is_directory(o.out_dir)) throw config_error("cannot create output directory " + o.out_dir);
}

// Largest wavenumber a solve at k may touch (continuation widens the interval twice).
double solve_k_design(const RunConfig& cfg) {
    return cfg.guard.enabled ? cfg.k + 4.0 * cfg.guard.config.delta : cfg.k;
}

cvec problem_rhs(const RunConfig& cfg, const Discretization& D, double k) {
    if (cfg.mode == ProblemMode::Scattering) return scattering_rhs(D, IncidentWave{k, cfg.alpha});
    return point_source_rhs(D, PointSource{k, *cfg.source});
}

struct Solved {
    SolveReport report;
    bool sigma_computed = false;
};

// Solves at cfg.k and returns observable values at `points` (continued if the guard fires).
Solved solve_problem(const RunConfig& cfg, const Discretization& D, const std::vector<Vec2>& points, int threads) {
    auto assemble = [&](double k) { return assemble_system(D, k, cfg.gamma, threads).A; };
    auto rhs = [&](double k) { return problem_rhs(cfg, D, k); };
    auto observe = [&](double k, const cvec& mu) {
        const LayerPotential P(D, k, mu);
        cvec v(Eigen::Index(points.size()));
        parallel_for(int(points.size()), threads, 64, [&](int b, int e) {
            for (int i = b; i < e; ++i) v(i) = P(points[i]);
        });
        return v;
    };
    Solved s;
    if (cfg.guard.enabled) {
        // samples run one after another; each assembly uses the thread pool
        s.report = solve_with_guard(cfg.k, cfg.guard.config, assemble, rhs, observe, 1);
        s.sigma_computed = true;
    } else {
        const ZarembaSystem S = assemble_system(D, cfg.k, cfg.gamma, threads);
        const DirectSolution d = solve_direct(S, rhs(cfg.k));
        s.report.mu = d.mu;
        s.report.residual = d.residual;
        s.report.sigma_ratio = std::numeric_limits<double>::quiet_NaN();
        s.report.path = SolvePath::Direct;
        s.report.observables = observe(cfg.k, d.mu);
    }
    if (!s.report.observables.allFinite()) throw numerical_error("observable evaluation produced non-finite values");
    return s;
}

json report_json(const Solved& s, const Discretization& D, const RunConfig& cfg) {
    json j;
    j["k"] = cfg.k;
    j["gamma"] = cfg.gamma;
    j["N"] = D.size();
    j["n_per_segment"] = D.options().n;
    j["sigma_ratio"] = s.sigma_computed ? json(s.report.sigma_ratio) : json(nullptr);
    j["path"] = path_name(s.report.path);
    j["residual"] = std::isfinite(s.report.residual) ? json(s.report.residual) : json(nullptr);
    if (s.report.path == SolvePath::Continued) {
        const auto& c = s.report.continuation;
        j["continuation"] = {{"sample_k", c.sample_k},
                             {"sample_ratio", c.sample_ratio},
                             {"excluded_k", c.excluded_k},
                             {"degree", c.degree},
                             {"interval_halfwidth", c.interval_halfwidth}};
    }
    return j;
}

json conventions_json() {
    return {{"scattered", "u_s, single-layer potential solving f = -u_inc on Dirichlet and g = -du_inc/dn on Neumann segments"},
            {"total", "u_inc + u_s"},
            {"scattered_opposite_sign", "-u_s, the scattered field for data f = +u_inc, g = +du_inc/dn; its total u_inc - (-u_s) equals u_inc + u_s"}};
}

json observables_json(const RunConfig& cfg, const cvec& u) {
    json arr = json::array();
    for (std::size_t i = 0; i < cfg.observables.size(); ++i) {
        const Vec2 x = cfg.observables[i];
        const cplx v = u(Eigen::Index(i));
        json o;
        o["x"] = point_json(x);
        if (cfg.mode == ProblemMode::Scattering) {
            const cplx inc = incident_field(IncidentWave{cfg.k, cfg.alpha}, x);
            o["u_scattered"] = cjson(v);
            o["u_scattered_opposite_sign"] = cjson(-v);
            o["u_incident"] = cjson(inc);
            o["u_total"] = cjson(inc + v);
        } else {
            const cplx ex = PointSource{cfg.k, *cfg.source}.value(x);
            o["u"] = cjson(v);
            o["oracle"] = cjson(ex);
            o["abs_error"] = std::abs(v - ex);
            o["rel_error"] = std::abs(v - ex) / std::abs(ex);
        }
        arr.push_back(o);
    }
    return arr;
}

Discretization build_discretization(const RunConfig& cfg, int n, double k_design_auto) {
    return Discretization(cfg.curve, cfg.partition, cfg.discretization(n, k_design_auto));
}

}  // namespace

void cmd_solve(RunConfig cfg, const CommandOptions& opt) {
    prepare(cfg, opt);
    const double kd = solve_k_design(cfg);
    const Discretization D = build_discretization(cfg, -1, kd);
    const Solved s = solve_problem(cfg, D, cfg.observables, opt.threads);
    json j;
    j["command"] = "solve";
    j["config"] = cfg.echo(kd);
    j["solution"] = report_json(s, D, cfg);
    j["observables"] = observables_json(cfg, s.report.observables);
    if (cfg.mode == ProblemMode::Scattering) j["conventions"] = conventions_json();
    if (s.report.path == SolvePath::Continued)
        j["density_note"] = "density.csv holds the raw density at k, which is unreliable on the continued path";
    write_json(out_path(opt, "summary.json"), j);
    if (cfg.density_csv) write_text(out_path(opt, "density.csv"), density_csv(D, s.report.mu));
}

void cmd_converge(RunConfig cfg, const CommandOptions& opt) {
    prepare(cfg, opt);
    if (cfg.n_list.size() < 3) throw config_error("converge needs problem.n_list with at least 3 entries");
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
        if (cfg.n_list[i] < 8) throw config_error("problem.n_list entries must be >= 8");
        if (i && cfg.n_list[i] <= cfg.n_list[i - 1]) throw config_error("problem.n_list must be strictly ascending");
    }
    if (cfg.observables.empty()) throw config_error("converge needs at least one observable");
    if (cfg.fc_bandwidth >= 0 && cfg.fc_bandwidth > cfg.n_list.front() - 1)
        throw config_error("discretization.fc_bandwidth too large for the smallest n");
    const double kd = solve_k_design(cfg);
    const std::vector<Vec2> pts{cfg.observables.front()};
    std::vector<ConvergeRow> rows;
    json runs = json::array();
    for (int n : cfg.n_list) {
        const Discretization D = build_discretization(cfg, n, kd);
        const Solved s = solve_problem(cfg, D, pts, opt.threads);
        rows.push_back({n, s.report.observables(0), 0.0});
        json r = report_json(s, D, cfg);
        r["u"] = cjson(s.report.observables(0));
        if (cfg.mode == ProblemMode::Bvp) {
            const cplx ex = PointSource{cfg.k, *cfg.source}.value(pts[0]);
            r["oracle_rel_error"] = std::abs(s.report.observables(0) - ex) / std::abs(ex);
        }
        runs.push_back(r);
    }
    for (auto& r : rows) r.delta = std::abs(r.u - rows.back().u);
    write_text(out_path(opt, "converge.csv"), converge_csv(rows));
    json j;
    j["command"] = "converge";
    j["config"] = cfg.echo(kd);
    j["observable"] = point_json(pts[0]);
    j["runs"] = runs;
    if (cfg.mode == ProblemMode::Scattering) j["conventions"] = conventions_json();
    write_json(out_path(opt, "converge.json"), j);
}

void cmd_eigs(RunConfig cfg, const CommandOptions& opt) {
    prepare(cfg, opt);
    const double kd = cfg.eigs.k_max;
    const Discretization D = build_discretization(cfg, -1, kd);
    const EigenScanResult r = eigen_scan(D, cfg.eigs, opt.threads);

    std::string scan = "k,ratio\n";
    for (std::size_t i = 0; i < r.k_values.size(); ++i) scan += fmt(r.k_values[i]) + "," + fmt(r.ratios[i]) + "\n";
    write_text(out_path(opt, "eigs_scan.csv"), scan);

    json minima = json::array();
    const auto samples = interior_samples(D);
    const auto checks = checkpoints(D, BoundaryKind::Dirichlet, 50);
    for (std::size_t i = 0; i < r.minima.size(); ++i) {
        const EigenMinimum& m = r.minima[i];
        json mj = {{"k", m.k},
                   {"bracket", json::array({m.bracket_lo, m.bracket_hi})},
                   {"tolerance", m.tolerance},
                   {"ratio", m.ratio},
                   {"raw_ratio", m.raw_ratio}};
        if (!samples.empty()) {
            const Eigenfunction ef(D, m.k, m.density, samples);
            const cvec trace = boundary_values(D, m.k, m.density, checks, opt.threads) * ef.scale();
            mj["dirichlet_trace_residual"] = trace.size() ? trace.cwiseAbs().maxCoeff() : 0.0;
            if (cfg.eigenfunction_grid > 0) {
                const CurveSampler cs(D.curve());
                double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
                for (const Vec2& p : cs.points()) {
                    x0 = std::min(x0, p.x);
                    x1 = std::max(x1, p.x);
                    y0 = std::min(y0, p.y);
                    y1 = std::max(y1, p.y);
                }
                const double pad = 0.05 * std::max(x1 - x0, y1 - y0);
                GridSpec gs{x0 - pad, x1 + pad, y0 - pad, y1 + pad, cfg.eigenfunction_grid, cfg.eigenfunction_grid};
                const double near = default_near_threshold(D);
                const FieldGrid g = eval_grid(D.curve(), gs, Region::Interior, near, [&](Vec2 x) { return ef(x); }, opt.threads);
                const std::string stem = "eigenfunction_" + std::to_string(i);
                write_text(out_path(opt, stem + ".csv"), grid_csv(g));
                write_json(out_path(opt, stem + ".json"),
                           {{"kind", "eigenfunction"},
                            {"k", m.k},
                            {"eigenvalue", m.k * m.k},
                            {"grid", {{"x_min", gs.x_min}, {"x_max", gs.x_max}, {"y_min", gs.y_min}, {"y_max", gs.y_max}, {"nx", gs.nx}, {"ny", gs.ny}}},
                            {"region", "interior"},
                            {"near_threshold", near},
                            {"normalization", "unit maximum modulus over interior samples, phase making that value real positive"},
                            {"mask_codes", {{"0", "evaluated"}, {"1", "outside the problem region"}, {"2", "near the boundary"}}},
                            {"columns", json::array({"x1", "x2", "mask", "re", "im"})},
                            {"rows", g.points.size()}});
                mj["grid_csv"] = stem + ".csv";
            }
        }
        minima.push_back(mj);
    }
    json j;
    j["command"] = "eigs";
    j["config"] = cfg.echo(kd);
    j["validation_mode"] = cfg.partition.validation_mode();
    j["median_ratio"] = r.median_ratio;
    j["scan_csv"] = "eigs_scan.csv";
    j["minima"] = minima;
    write_json(out_path(opt, "eigs.json"), j);
}

void cmd_grid(RunConfig cfg, const CommandOptions& opt) {
    prepare(cfg, opt);
    const std::string& mode = cfg.grid.mode;
    if (cfg.mode == ProblemMode::Bvp && mode != "scattered")
        throw config_error("bvp grids support output.grid.mode 'scattered' (the layer potential) only");
    const Region region = cfg.gamma == 1 ? Region::Interior : Region::Exterior;
    const double kd = solve_k_design(cfg);
    const Discretization D = build_discretization(cfg, -1, kd);
    const double near = default_near_threshold(D);

    FieldGrid g;
    g.spec = cfg.grid.spec;
    for (int j = 0; j < g.spec.ny; ++j)
        for (int i = 0; i < g.spec.nx; ++i) g.points.push_back(g.spec.point(i, j));
    g.mask = classify_points(D.curve(), g.points, region, near, opt.threads);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    g.values.assign(g.points.size(), cplx(nan, nan));

    std::vector<int> idx;
    for (std::size_t i = 0; i < g.points.size(); ++i)
        if (g.mask[i] == mask_ok) idx.push_back(int(i));
    const IncidentWave w{cfg.k, cfg.alpha};
    json sol;
    if (mode == "incident") {
        for (int i : idx) g.values[i] = incident_field(w, g.points[i]);
    } else {
        std::vector<Vec2> pts;
        for (int i : idx) pts.push_back(g.points[i]);
        const Solved s = solve_problem(cfg, D, pts, opt.threads);
        for (std::size_t m = 0; m < idx.size(); ++m) {
            cplx v = s.report.observables(Eigen::Index(m));
            if (mode == "total") v += incident_field(w, g.points[idx[m]]);
            g.values[idx[m]] = v;
        }
        sol = report_json(s, D, cfg);
    }
    write_text(out_path(opt, "grid.csv"), grid_csv(g));
    json j;
    j["command"] = "grid";
    j["kind"] = "field";
    j["config"] = cfg.echo(kd);
    j["grid"] = {{"x_min", g.spec.x_min}, {"x_max", g.spec.x_max}, {"y_min", g.spec.y_min},
                 {"y_max", g.spec.y_max}, {"nx", g.spec.nx},       {"ny", g.spec.ny}};
    j["mode"] = mode;
    j["k"] = cfg.k;
    j["alpha"] = cfg.alpha;
    j["region"] = region == Region::Interior ? "interior" : "exterior";
    j["near_threshold"] = near;
    j["mask_codes"] = {{"0", "evaluated"}, {"1", "outside the problem region"}, {"2", "near the boundary"}};
    j["columns"] = json::array({"x1", "x2", "mask", "re", "im"});
    j["rows"] = g.points.size();
    if (cfg.mode == ProblemMode::Scattering) j["conventions"] = conventions_json();
    if (!sol.is_null()) j["solution"] = sol;
    write_json(out_path(opt, "grid.json"), j);
}

}  // namespace zaremba::app
