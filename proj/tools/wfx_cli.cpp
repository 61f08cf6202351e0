#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "wfx/cli/figures.hpp"
#include "wfx/cli/parallel.hpp"
#include "wfx/cli/runner.hpp"
#include "wfx/fock.hpp"

int main(int argc, char** argv) {
    using namespace wfx::cli;
    CLI::App app{"weak-field three-wave mixing: expansion vs exact propagation"};
    app.require_subcommand(1);

    std::string config;
    auto* run_cmd = app.add_subcommand("run", "run a scenario sweep from a JSON config");
    run_cmd->add_option("config", config, "config file")->required();

    int fig = 0;
    std::string out_dir = ".";
    int threads = 1;
    auto* fig_cmd = app.add_subcommand("figure", "write the dataset behind a figure");
    fig_cmd->add_option("id", fig, "figure number")->required()->check(CLI::Range(1, 4));
    fig_cmd->add_option("--out", out_dir, "output directory");
    fig_cmd->add_option("--threads", threads, "worker threads (WFX_THREADS overrides)")->check(CLI::PositiveNumber);

    app.add_subcommand("selftest", "run the invariant checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_parse;
    }

    try {
        if (run_cmd->parsed()) return run(config, std::cout, std::cerr);
        if (fig_cmd->parsed()) {
            std::cout << write_figure(fig, out_dir, effective_threads(threads)) << "\n";
            return exit_ok;
        }
        return selftest(std::cout);
    } catch (const wfx::TruncationError& e) {
        std::cerr << "error: " << e.what() << " (leakage " << e.leakage << ")\n";
        return exit_leakage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    }
}
