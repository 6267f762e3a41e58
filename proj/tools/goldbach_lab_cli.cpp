#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include <goldbach_lab/cli.hpp>

using goldbach_lab::cli::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"goldbach-lab: circle-method experiments and desk-scale ternary verification"};
    app.require_subcommand(1);

    struct Valued {
        const char* flag;
        const char* key;
        const char* help;
    };
    static const Valued valued[] = {
        {"--x", "x", "scale x"},
        {"--n-lo", "n_lo", "first n"},
        {"--n-hi", "n_hi", "last n"},
        {"--r", "r", "major-arc denominator bound"},
        {"--s", "s", "sieve level"},
        {"--eta", "eta", "smoothing name"},
        {"--kappa", "kappa", "eta_star scale"},
        {"--R", "R", "h_R band limit"},
        {"--workers", "workers", "worker threads"},
        {"--checkpoint", "checkpoint", "checkpoint JSON path"},
        {"--out", "out", "output path"},
        {"--samples", "samples", "survey samples"},
        {"--seed", "seed", "survey seed"},
        {"--alpha-lo", "alpha_lo", "first alpha"},
        {"--alpha-hi", "alpha_hi", "alpha grid end (exclusive)"},
        {"--points", "points", "alpha grid points"},
        {"--limit", "limit", "ladder limit"},
        {"--max-gap", "max_gap", "ladder max gap"},
        {"--ladder", "ladder", "ladder file"},
        {"--witnesses", "witnesses", "witness CSV path"},
        {"--budget-mb", "budget_mb", "memory budget in MB"},
    };

    std::map<std::string, std::string> given;
    std::map<std::string, bool> switches;
    std::string config_path;
    const char* commands[] = {"verify", "expsum", "bounds", "reps", "ladder-build", "sieve-ratio"};
    for (const char* name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "flat key = value config file");
        for (const auto& v : valued) sub->add_option(v.flag, given[v.key], v.help);
        sub->add_flag("--certified", switches["certified"], "rerun bounds in interval arithmetic");
        sub->add_flag("--arcs", switches["arcs"], "sieve-ratio: L2 mass on arcs");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return goldbach_lab::cli::exit_usage;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = goldbach_lab::cli::read_config_file(config_path);
        cfg.command = app.get_subcommands().front()->get_name();
        for (const auto& v : valued) {
            const CLI::App* sub = app.get_subcommands().front();
            if (sub->count(v.flag) > 0) cfg.set(v.key, given[v.key]);
        }
        for (const auto& [k, on] : switches)
            if (on) cfg.set(k, "true");
    } catch (const goldbach_lab::DomainError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return goldbach_lab::cli::exit_usage;
    }
    return goldbach_lab::cli::run(cfg, std::cout, std::cerr);
}
