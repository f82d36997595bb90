#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "lptorus/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"experiment harness for dyadic-analysis probes on the discrete torus"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "run one experiment suite");
    std::string suite, config_path, symbol, out_dir;
    lpt::ExperimentConfig cfg;
    if (const char* env_out = std::getenv("LPTORUS_OUT")) cfg.out = env_out;
    run_cmd->add_option("--config", config_path, "key=value config file");
    run_cmd->add_option("--suite", suite, "suite name (see `list`)");
    run_cmd->add_option("--seed", cfg.seed, "base RNG seed");
    run_cmd->add_option("--grid-J", cfg.J, "dyadic depth, N = 2^J");
    run_cmd->add_option("--d", cfg.d, "spatial dimension (1 or 2)");
    run_cmd->add_option("--gamma", cfg.gamma, "median fraction in (0,1)");
    run_cmd->add_option("--q", cfg.q, "inner exponent");
    run_cmd->add_option("--sigma", cfg.sigma, "weight decay exponent");
    run_cmd->add_option("--t", cfg.t, "averaging exponent");
    run_cmd->add_option("--s", cfg.s, "smoothness order");
    run_cmd->add_option("--mu", cfg.mu, "minimum dyadic level");
    run_cmd->add_option("--n", cfg.n, "operator linearity");
    run_cmd->add_option("--trials", cfg.trials, "trial count");
    run_cmd->add_option("--symbol", symbol, "catalog symbol name");
    run_cmd->add_option("--out", out_dir, "output directory");

    auto* list_cmd = app.add_subcommand("list", "list suite names");

    auto* validate_cmd = app.add_subcommand("validate", "schema-check a results CSV");
    std::string csv_path;
    validate_cmd->add_option("csv", csv_path, "path to a CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (list_cmd->parsed()) {
        for (const std::string& name : lpt::list_suites()) std::printf("%s\n", name.c_str());
        return 0;
    }
    if (validate_cmd->parsed()) {
        std::string err;
        if (lpt::validate_csv(csv_path, &err)) {
            std::printf("ok %s\n", csv_path.c_str());
            return 0;
        }
        std::fprintf(stderr, "invalid %s: %s\n", csv_path.c_str(), err.c_str());
        return 1;
    }

    try {
        if (!config_path.empty()) {
            lpt::ExperimentConfig file_cfg = lpt::parse_config_file(config_path);
            // CLI flags override file values
            if (cfg.out != file_cfg.out && cfg.out != "out") file_cfg.out = cfg.out;
            file_cfg.seed = run_cmd->count("--seed") ? cfg.seed : file_cfg.seed;
            file_cfg.J = run_cmd->count("--grid-J") ? cfg.J : file_cfg.J;
            file_cfg.d = run_cmd->count("--d") ? cfg.d : file_cfg.d;
            file_cfg.gamma = run_cmd->count("--gamma") ? cfg.gamma : file_cfg.gamma;
            file_cfg.q = run_cmd->count("--q") ? cfg.q : file_cfg.q;
            file_cfg.sigma = run_cmd->count("--sigma") ? cfg.sigma : file_cfg.sigma;
            file_cfg.t = run_cmd->count("--t") ? cfg.t : file_cfg.t;
            file_cfg.s = run_cmd->count("--s") ? cfg.s : file_cfg.s;
            file_cfg.mu = run_cmd->count("--mu") ? cfg.mu : file_cfg.mu;
            file_cfg.n = run_cmd->count("--n") ? cfg.n : file_cfg.n;
            file_cfg.trials = run_cmd->count("--trials") ? cfg.trials : file_cfg.trials;
            cfg = file_cfg;
        }
        if (!suite.empty()) cfg.suite = suite;
        if (!symbol.empty()) cfg.symbol = symbol;
        if (!out_dir.empty()) cfg.out = out_dir;
        if (cfg.suite.empty()) {
            std::fprintf(stderr, "no suite selected; use --suite or a config file\n");
            return 2;
        }
        return lpt::run(cfg);
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 2;
    }
}
