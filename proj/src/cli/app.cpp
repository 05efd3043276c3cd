#include "rotorbath/cli.hpp"
#include "rotorbath/error.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace rotorbath::cli {

namespace {

struct Common {
    std::string config;
    std::vector<std::string> sets;
    std::optional<unsigned long long> seed;
    std::optional<int> kicks;
};

void add_common(CLI::App* cmd, Common& c, bool with_kicks) {
    cmd->add_option("--config", c.config, "JSON config file with flat keys (K, hbar, eta, ...)");
    cmd->add_option("--set", c.sets, "Override one config key, key=value (repeatable)");
    cmd->add_option("--seed", c.seed, "RNG seed");
    if (with_kicks) cmd->add_option("--kicks", c.kicks, "Number of kicks");
}

// Config file, then --set overrides, then dedicated flags.
ParamSet resolve(const Common& c) {
    ParamSet p = c.config.empty() ? ParamSet{} : load_config(c.config);
    for (const auto& s : c.sets) apply_override(p, s);
    if (c.seed) p.run.seed = *c.seed;
    if (c.kicks) p.run.kicks = *c.kicks;
    return p;
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"Kicked rotor coupled to an ohmic bath: quantum and classical entropy growth"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ROTORBATH_VERSION);

    Common common;
    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Run the quantum and/or classical evolution");
    add_common(simulate, common, true);
    simulate->add_option("--mode", sim.mode, "quantum, classical or both")
        ->check(CLI::IsMember({"quantum", "classical", "both"}));
    simulate->add_option("--out", sim.out, "Output directory");

    SweepOptions sweep;
    std::string values;
    auto* sw = app.add_subcommand("sweep", "Repeat the simulation over one parameter");
    add_common(sw, common, true);
    sw->add_option("--param", sweep.param, "K, eta or hbar")->required()->check(CLI::IsMember({"K", "eta", "hbar"}));
    sw->add_option("--values", values, "Comma-separated values")->required();
    sw->add_option("--mode", sweep.mode, "quantum, classical or both")
        ->check(CLI::IsMember({"quantum", "classical", "both"}));
    sw->add_option("--out", sweep.out, "Output directory");

    DiagnoseOptions diag;
    std::string times;
    auto* dg = app.add_subcommand("diagnose", "Classical diagnostics: Lyapunov exponent, diffusion, marginals");
    add_common(dg, common, false);
    dg->add_option("--what", diag.what, "lyapunov, diffusion or marginals")->required();
    dg->add_option("--times", times, "Marginal snapshot times, e.g. 0,1-,1+,10-");
    dg->add_option("--steps", diag.steps, "Lyapunov iterations");
    dg->add_option("--ensemble", diag.ensemble, "Diffusion ensemble size");
    dg->add_option("--diffusion-steps", diag.diffusion_steps, "Diffusion iterations per orbit");
    dg->add_option("--out", diag.out, "Output directory");

    std::string plot_dir;
    auto* plot = app.add_subcommand("plot", "Write SVG charts and a matplotlib script for a run or sweep");
    plot->add_option("dir", plot_dir, "Directory written by simulate or sweep")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*plot) return cmd_plot(plot_dir);
        const ParamSet params = resolve(common);
        if (*simulate) return cmd_simulate(params, sim);
        if (*sw) {
            for (const auto& v : CLI::detail::split(values, ',')) {
                try {
                    std::size_t used = 0;
                    sweep.values.push_back(std::stod(v, &used));
                    if (used != v.size()) throw std::invalid_argument(v);
                } catch (const std::exception&) {
                    throw ConfigError("--values: '" + v + "' is not a number");
                }
            }
            return cmd_sweep(params, sweep);
        }
        if (!times.empty()) diag.times = CLI::detail::split(times, ',');
        return cmd_diagnose(params, diag);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace rotorbath::cli
