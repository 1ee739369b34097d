#include "elscat/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>

namespace {

// 0 success, 2 configuration error, 3 numerical failure, 4 I/O error.
int classify(const std::exception& e) {
    if (dynamic_cast<const elscat::numeric_fault*>(&e)) return 3;
    if (dynamic_cast<const elscat::io_error*>(&e)) return 4;
    return 2; // invalid_argument, domain_error, invalid_format, parse errors
}

void report(int code, const std::string& message) {
    nlohmann::json err = {{"error", {{"code", code}, {"message", message}}}};
    std::cerr << err.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral solver for elastic scattering by compact potentials"};
    app.set_help_all_flag("--help-all");
    app.fallthrough(); // global options may follow the subcommand name
    std::string config_path, out_override;
    int workers_override = 0;
    bool verbose = false;
    app.add_option("-c,--config", config_path, "run configuration file (JSON)")->required();
    app.add_option("-o,--output", out_override, "override outputs.directory");
    app.add_option("-w,--workers", workers_override, "override worker count")
        ->check(CLI::PositiveNumber);
    app.add_flag("-v,--verbose", verbose, "progress to stderr");
    app.require_subcommand(1);

    CLI::App* c_solve = app.add_subcommand("solve", "solve one incident wave, write fields");
    CLI::App* c_conv = app.add_subcommand("convergence", "refinement study on the closed-form case");
    CLI::App* c_sino = app.add_subcommand("sinogram", "frequency-angle amplitude panels");
    CLI::App* c_amp = app.add_subcommand("amplitude", "far-field table at explicit directions");
    CLI::App* c_decay = app.add_subcommand("kernel-decay", "kernel coefficient decay report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report(2, e.what());
        return 2;
    }

    try {
        elscat::RunConfig cfg = elscat::load_run_config(config_path);
        elscat::apply_overrides(cfg, out_override, workers_override);

        if (c_solve->parsed()) elscat::cmd_solve(cfg, verbose);
        else if (c_conv->parsed()) elscat::cmd_convergence(cfg, verbose);
        else if (c_sino->parsed()) elscat::cmd_sinogram(cfg, verbose);
        else if (c_amp->parsed()) elscat::cmd_amplitude(cfg, verbose);
        else if (c_decay->parsed()) elscat::cmd_kernel_decay(cfg, verbose);
        return 0;
    } catch (const std::exception& e) {
        int code = classify(e);
        report(code, e.what());
        return code;
    }
}
