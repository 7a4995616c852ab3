#include <CLI11.hpp>

#include "specloc/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spectral expansion laboratory for polyharmonic multipliers"};
    app.require_subcommand(1);

    specloc::RunOptions opts;
    unsigned long long seed = 0;
    bool seed_set = false;

    const char* names[] = {"transform-check", "partition-check", "multiplier-audit",
                           "maximal-audit", "localization-run"};
    const char* blurbs[] = {
        "transform invariants: Parseval, round trip, brute-force oracle",
        "cutoff family invariants: partition residual, squeeze, supports",
        "localized multiplier sweeps: tail bounds, decay fits, derivatives",
        "maximal-operator ratio audits and refinement stability",
        "restricted convergence profiles for vanishing-ball inputs",
    };
    std::string chosen;
    for (int i = 0; i < 5; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
        sub->add_option("--config", opts.config_path, "experiment config file")
            ->required();
        sub->add_option("--out", opts.out_dir, "output directory (default: output.dir)");
        sub->add_option("--seed", seed, "override function.seed")
            ->each([&](const std::string&) { seed_set = true; });
        sub->callback([&, i] { chosen = names[i]; });
    }

    CLI11_PARSE(app, argc, argv);
    if (seed_set) opts.seed = seed;
    return specloc::run_subcommand(chosen, opts);
}
