#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lptorus/harness.hpp"

using namespace lpt;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("suite catalog") {
    const auto suites = list_suites();
    CHECK(suites.size() == 11);
    const std::vector<std::string> expected = {
        "partition-exactness", "maximal-lemmas",     "equivalence",
        "bmo-equivalence",     "duality",            "marshall",
        "multiplier-bound",    "multiplier-decomposition",
        "pseudo-decomposition", "pseudo-bound",      "kato-ponce"};
    CHECK(suites == expected);
}

TEST_CASE("unknown suite is a usage error") {
    ExperimentConfig cfg;
    cfg.suite = "no-such-suite";
    cfg.out = "/tmp/lpt_harness_bad";
    CHECK(run(cfg) == 2);
}

TEST_CASE("reruns are byte-identical") {
    ExperimentConfig cfg;
    cfg.suite = "partition-exactness";
    cfg.d = 1;
    cfg.J = 5;
    cfg.trials = 5;
    cfg.seed = 7;
    cfg.out = "/tmp/lpt_harness_a";
    REQUIRE(run(cfg) == 0);
    ExperimentConfig cfg2 = cfg;
    cfg2.out = "/tmp/lpt_harness_b";
    REQUIRE(run(cfg2) == 0);
    CHECK(slurp("/tmp/lpt_harness_a/partition-exactness/results.csv") ==
          slurp("/tmp/lpt_harness_b/partition-exactness/results.csv"));
    CHECK(!slurp("/tmp/lpt_harness_a/partition-exactness/results.csv").empty());
}

TEST_CASE("csv schema validation") {
    {
        std::ofstream good("/tmp/lpt_good.csv");
        good << "a,b,c\n1,2,3\n4,5,6\n";
    }
    std::string err;
    CHECK(validate_csv("/tmp/lpt_good.csv", &err));
    {
        std::ofstream bad("/tmp/lpt_bad.csv");
        bad << "a,b,c\n1,2\n";
    }
    CHECK_FALSE(validate_csv("/tmp/lpt_bad.csv", &err));
    CHECK_FALSE(validate_csv("/tmp/lpt_missing_file.csv", &err));
}

TEST_CASE("config file parsing and overrides") {
    {
        std::ofstream cfg_file("/tmp/lpt_cfg.txt");
        cfg_file << "# comment line\n";
        cfg_file << "suite=duality\n";
        cfg_file << "J=6\n";
        cfg_file << "gamma=0.25\n";
        cfg_file << "trials=9\n";
        cfg_file << "seed=123\n";
    }
    ExperimentConfig cfg = parse_config_file("/tmp/lpt_cfg.txt");
    CHECK(cfg.suite == "duality");
    CHECK(cfg.J == 6);
    CHECK(cfg.gamma == doctest::Approx(0.25));
    CHECK(cfg.trials == 9);
    CHECK(cfg.seed == 123);
    apply_override(cfg, "q", "1.5");
    CHECK(cfg.q == doctest::Approx(1.5));
    apply_override(cfg, "t", "inf");
    CHECK(std::isinf(cfg.t));
    CHECK_THROWS_AS(apply_override(cfg, "bogus", "1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_file("/tmp/lpt_nonexistent_cfg.txt"), std::invalid_argument);
}

TEST_CASE("a small suite writes validated outputs") {
    ExperimentConfig cfg;
    cfg.suite = "duality";
    cfg.d = 1;
    cfg.J = 5;
    cfg.trials = 6;
    cfg.seed = 3;
    cfg.out = "/tmp/lpt_harness_duality";
    REQUIRE(run(cfg) == 0);
    std::string err;
    CHECK(validate_csv("/tmp/lpt_harness_duality/duality/results.csv", &err));
    const std::string summary = slurp("/tmp/lpt_harness_duality/duality/summary.txt");
    CHECK(summary.find("RESULT pass") != std::string::npos);
}
