#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lpt {

struct ExperimentConfig {
    std::string suite;
    int d = 1;
    int J = 8;
    double gamma = 0.5;
    double q = 2.0;
    double sigma = 2.0;
    double t = 1.0;
    double s = 1.0;
    int mu = 0;
    int n = 2;
    int trials = 100;
    std::uint64_t seed = 7;
    std::string symbol;  // catalog entry; empty picks the suite default
    std::string out = "out";
};

// Flat key=value file; '#' starts a comment line.
ExperimentConfig parse_config_file(const std::string& path);
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

std::vector<std::string> list_suites();

// Runs one suite, writing results.csv, summary.txt and plot series under
// cfg.out. Returns 0 on success, 1 when an invariant check fails, 2 on a
// configuration error.
int run(const ExperimentConfig& cfg);

// Minimal schema check: a header line, constant field count, numeric cells.
bool validate_csv(const std::string& path, std::string* error);

}  // namespace lpt
