#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "zaremba/app/commands.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

struct Flags {
    std::string config;
    std::string out = ".";
    int threads = 1;
    std::optional<double> guard_threshold;
    bool force_continuation = false;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON run configuration")->required();
    cmd->add_option("--out", f.out, "output directory (created if missing)");
    cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--guard-threshold", f.guard_threshold, "resonance guard threshold on sigma_min/sigma_max");
    cmd->add_flag("--force-continuation", f.force_continuation, "continue in k even away from resonances");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Helmholtz solver for mixed Dirichlet/Neumann boundary conditions on smooth closed curves"};
    app.require_subcommand(1);
    Flags flags;
    CLI::App* solve = app.add_subcommand("solve", "solve one boundary value or scattering problem");
    CLI::App* converge = app.add_subcommand("converge", "self-convergence table of u(x0) over problem.n_list");
    CLI::App* eigs = app.add_subcommand("eigs", "interior eigenvalue scan and eigenfunctions");
    CLI::App* grid = app.add_subcommand("grid", "field values on a rectangular grid");
    for (CLI::App* c : {solve, converge, eigs, grid}) add_flags(c, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    zaremba::app::CommandOptions opt;
    opt.out_dir = flags.out;
    opt.threads = flags.threads;
    opt.guard_threshold = flags.guard_threshold;
    opt.force_continuation = flags.force_continuation;

    try {
        const zaremba::app::RunConfig cfg = zaremba::app::load_config(flags.config);
        if (solve->parsed()) zaremba::app::cmd_solve(cfg, opt);
        if (converge->parsed()) zaremba::app::cmd_converge(cfg, opt);
        if (eigs->parsed()) zaremba::app::cmd_eigs(cfg, opt);
        if (grid->parsed()) zaremba::app::cmd_grid(cfg, opt);
    } catch (const zaremba::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const zaremba::geometry_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_ok;
}
