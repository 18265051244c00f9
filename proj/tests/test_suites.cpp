#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ctlab/suites.hpp"

using namespace ctlab;

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.grid = 12;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.grid = 16;
    cfg.band = 8;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.band = 3;
    cfg.tol_solver = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("config file parsing") {
    const std::string path = "test_config_tmp.cfg";
    {
        std::ofstream os(path);
        os << "# comment line\n"
           << "grid = 8\n"
           << "seed = 42   # trailing comment\n"
           << "tol_solver = 1e-9\n";
    }
    const ExperimentConfig cfg = load_config(path);
    CHECK(cfg.grid == 8);
    CHECK(cfg.seed == 42);
    CHECK(cfg.tol_solver == doctest::Approx(1e-9));
    std::remove(path.c_str());

    {
        std::ofstream os(path);
        os << "not_a_key = 3\n";
    }
    CHECK_THROWS_AS(load_config(path), ConfigError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config("missing_file.cfg"), ConfigError);
}

TEST_CASE("unknown suite name is a configuration error") {
    ExperimentConfig cfg;
    cfg.out_dir = ".";
    CHECK_THROWS_AS(run_suite("no-such-suite", cfg), ConfigError);
}

TEST_CASE("numeric formatting is fixed at 12 significant digits") {
    CHECK(format_sig(1.0 / 3.0) == "0.333333333333");
    CHECK(format_sig(1.0 / 3.0) == format_sig(1.0 / 3.0));
}

TEST_CASE("suite reports aggregate pass/fail") {
    SuiteReport rep;
    rep.suite = "demo";
    rep.check_le("ok", 1e-10, 1e-8);
    CHECK(rep.passed());
    rep.check_le("bad", 1.0, 1e-8);
    CHECK_FALSE(rep.passed());
    rep.checks.clear();
    rep.record_failure("numerical", "solver blew up");
    CHECK_FALSE(rep.passed());
}

TEST_CASE("drift helper") {
    CHECK(detail::drift(1.0, 1.2) == doctest::Approx(0.2));
    CHECK(detail::drift(1.2, 1.0) == doctest::Approx(0.2));
    CHECK(detail::drift(0.0, 0.0) == 0.0);
    CHECK(!std::isfinite(detail::drift(0.0, 1.0)));
}
