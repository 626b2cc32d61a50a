// hazy: exact dephasing-into-a-hazy-environment sweeps.
//
//   hazy mutual-info  --n-env 100 --haziness 0.8 --t-grid 0:pi/2:33 --frag-grid all
//   hazy redundancy   --h-grid 0:0.99:100 --t-grid pi/2,pi/3 --delta 0.1
//   hazy bimodal      --n-frag 50 --haziness 0.6
//   hazy validate     --threads 4
//
// All output is CSV; `validate` also prints a human-readable summary to
// stderr. Exit codes: 0 success, 1 validation failure, 2 config error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hazy/hazy.hpp"

namespace {

struct CliArgs {
    std::optional<std::string> config_path;
    std::optional<long> n_env;
    std::optional<double> s00, s01_re, s01_im, r00, r01, haziness, delta;
    std::optional<std::string> t_grid, frag_grid, h_grid, method, eigen_method, output;
    std::optional<long> n_frag;
    std::optional<int> threads;
    bool allow_large_frag = false;
    bool inject_fault = false;
};

void add_common_flags(CLI::App* cmd, CliArgs& args) {
    cmd->add_option("--config", args.config_path,
                    "flat key = value config file; flags override it");
    cmd->add_option("--n-env", args.n_env, "environment size #E");
    cmd->add_option("--s00", args.s00, "system population s00");
    cmd->add_option("--s01-re", args.s01_re, "Re s01");
    cmd->add_option("--s01-im", args.s01_im, "Im s01");
    cmd->add_option("--r00", args.r00, "environment-qubit population r00");
    auto* r01 = cmd->add_option("--r01", args.r01, "environment-qubit coherence r01");
    auto* hz = cmd->add_option("--haziness", args.haziness,
                               "environment-qubit entropy h in bits");
    r01->excludes(hz);
    hz->excludes(r01);
    cmd->add_option("--t-grid", args.t_grid,
                    "times: comma list or start:stop:count; pi tokens allowed");
    cmd->add_option("--frag-grid", args.frag_grid, "fragment sizes: all | list | a-b");
    cmd->add_option("--h-grid", args.h_grid, "haziness grid (redundancy)");
    cmd->add_option("--delta", args.delta, "information deficit");
    cmd->add_option("--n-frag", args.n_frag, "fragment size (bimodal)");
    cmd->add_option("--method", args.method, "auto|schur|closed-form|oracle");
    cmd->add_option("--threads", args.threads, "worker threads (0 = hardware)");
    cmd->add_option("--output", args.output, "output CSV path (default stdout)");
    cmd->add_flag("--allow-large-frag", args.allow_large_frag,
                  "lift the 200-qubit fragment cap (slow)");
    cmd->add_option("--eig", args.eigen_method,
                    "eigensolver: householder-ql (default) | jacobi");
}

hazy::SweepConfig build_config(const CliArgs& args) {
    hazy::SweepConfig cfg;
    if (args.config_path) cfg = hazy::parse_config_file(*args.config_path);
    auto set = [&cfg](const std::string& key, const std::string& value) {
        hazy::apply_config_entry(cfg, key, value);
    };
    if (args.n_env) cfg.n_env = *args.n_env;
    if (args.s00) cfg.s00 = *args.s00;
    if (args.s01_re) cfg.s01_re = *args.s01_re;
    if (args.s01_im) cfg.s01_im = *args.s01_im;
    if (args.r00) cfg.r00 = *args.r00;
    if (args.r01) {
        cfg.r01 = *args.r01;
        cfg.haziness.reset();
    }
    if (args.haziness) {
        cfg.haziness = *args.haziness;
        cfg.r01.reset();
    }
    if (args.t_grid) set("t_grid", *args.t_grid);
    if (args.frag_grid) set("frag_grid", *args.frag_grid);
    if (args.h_grid) set("h_grid", *args.h_grid);
    if (args.delta) cfg.delta = *args.delta;
    if (args.n_frag) cfg.n_frag = *args.n_frag;
    if (args.method) set("method", *args.method);
    if (args.threads) cfg.threads = *args.threads;
    if (args.output) cfg.output = *args.output;
    if (args.allow_large_frag) cfg.allow_large_frag = true;
    if (args.eigen_method) set("eigen_method", *args.eigen_method);
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dephasing simulator for hazy qubit environments"};
    app.require_subcommand(1);

    CliArgs args;
    CLI::App* mutual = app.add_subcommand(
        "mutual-info", "I(S:F) over the (t, fragment-size) grid");
    CLI::App* redun = app.add_subcommand(
        "redundancy", "redundancy R_delta over the (t, haziness) grid");
    CLI::App* bimodal = app.add_subcommand(
        "bimodal", "record-count distribution P_L/P_R and overlap at t = pi/2");
    CLI::App* validate = app.add_subcommand(
        "validate", "cross-method trust-anchor checks (CSV to stdout)");
    for (CLI::App* cmd : {mutual, redun, bimodal, validate}) add_common_flags(cmd, args);
    validate->add_flag("--inject-fault", args.inject_fault,
                       "flip one computed sign to prove the checks can fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        const hazy::SweepConfig cfg = build_config(args);
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!cfg.output.empty()) {
            file.open(cfg.output);
            if (!file) {
                std::cerr << "error: cannot open output file '" << cfg.output << "'\n";
                return 2;
            }
            out = &file;
        }
        if (mutual->parsed()) return hazy::cmd_mutual_info(cfg, *out);
        if (redun->parsed()) return hazy::cmd_redundancy(cfg, *out);
        if (bimodal->parsed()) return hazy::cmd_bimodal(cfg, *out);
        hazy::ValidateOptions vopts;
        vopts.inject_fault = args.inject_fault;
        return hazy::cmd_validate(cfg, *out, std::cerr, vopts);
    } catch (const hazy::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
