// Command-line entry point: kernel checks, GP runs, scaling sweeps, and
// Fock-space reports, all driven by a sectioned key-value configuration file.
//
// Exit codes: 0 success, 1 validation, 2 numerical accuracy, 3 divergence.

#include <CLI11.hpp>

#include <iostream>

#include "dipgp/commands.hpp"
#include "dipgp/errors.hpp"
#include "dipgp/version.hpp"

namespace {

struct GlobalArgs {
    std::string config_path;
    dipgp::CmdOptions opts;
};

void add_common(CLI::App* sub, GlobalArgs& g, bool needs_config = true) {
    auto* c = sub->add_option("--config", g.config_path, "path to the run configuration file");
    if (needs_config) c->required();
    sub->add_option("--out", g.opts.out_dir, "output directory (default: current directory)");
    sub->add_option("--threads", g.opts.threads, "worker thread cap for parallel sections")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--allow-conditional", g.opts.allow_conditional,
                  "proceed in conditionally stable regimes");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dipolar GP / Fock-space numerical laboratory"};
    app.set_version_flag("--version", dipgp::version_string);
    app.require_subcommand(0, 1);

    bool print_defaults = false;
    app.add_flag("--print-defaults", print_defaults,
                 "print the full default configuration and exit");

    GlobalArgs g;
    auto* kernel = app.add_subcommand("kernel-check", "kernel cancellation, truncation bound, "
                                                      "and closed-form agreement checks");
    add_common(kernel, g);
    auto* gprun = app.add_subcommand("gp-run", "integrate the limiting or scaled GP equation");
    add_common(gprun, g);
    auto* converge = app.add_subcommand("converge", "N-sweep and convergence-rate fit");
    add_common(converge, g);
    auto* fockcmd = app.add_subcommand("fock", "structural identity suite and the desk-scale "
                                               "many-body/Bogoliubov comparison");
    add_common(fockcmd, g);

    CLI11_PARSE(app, argc, argv);

    if (print_defaults) {
        std::cout << dipgp::RunConfig().print();
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help() << std::endl;
        return 1;
    }

    try {
        const dipgp::RunConfig cfg = dipgp::RunConfig::parse_file(g.config_path);
        if (kernel->parsed()) return dipgp::cmd_kernel_check(cfg, g.opts, std::cout);
        if (gprun->parsed()) return dipgp::cmd_gp_run(cfg, g.opts, std::cout);
        if (converge->parsed()) return dipgp::cmd_converge(cfg, g.opts, std::cout);
        if (fockcmd->parsed()) return dipgp::cmd_fock(cfg, g.opts, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return dipgp::exit_code_for(e);
    }
    return 1;
}
