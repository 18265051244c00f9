// Command-line batch runner for the experiment suites.
//
// Usage: ctlab <suite> [--config PATH] [--out DIR] [--seed N] [--grid N]
//              [--jobs N]
// Exit code: 0 if every check passed, 1 on any check failure, 2 on a
// usage or configuration error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ctlab/suites.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Contact-geometry numerical laboratory suite runner"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    int grid = 0, jobs = 0;

    std::vector<CLI::App*> subs;
    std::vector<std::string> names = ctlab::suite_names();
    names.push_back("all");
    for (const auto& n : names) {
        CLI::App* s = app.add_subcommand(n, "Run the " + n + " suite");
        s->add_option("--config", config_path, "Flat key=value configuration file");
        s->add_option("--out", out_dir, "Output directory for JSON/CSV reports");
        s->add_option("--seed", seed, "Random seed override");
        s->add_option("--grid", grid, "Grid size override (power of two >= 8)");
        s->add_option("--jobs", jobs, "Worker count for sample sweeps");
        subs.push_back(s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        ctlab::ExperimentConfig cfg;
        CLI::App* sub = app.get_subcommands().front();
        if (sub->count("--config")) cfg = ctlab::load_config(config_path);
        if (sub->count("--seed")) cfg.seed = seed;
        if (sub->count("--grid")) cfg.grid = grid;
        if (sub->count("--jobs")) cfg.jobs = jobs;
        if (sub->count("--out")) {
            cfg.out_dir = out_dir;
        } else if (const char* env = std::getenv("CTLAB_OUT")) {
            cfg.out_dir = env;
        }
        cfg.validate();
        std::filesystem::create_directories(cfg.out_dir);

        bool all_pass = true;
        for (const auto& rep : ctlab::run_suites(sub->get_name(), cfg)) {
            all_pass = all_pass && rep.passed();
            std::cout << rep.suite << ": " << (rep.passed() ? "PASS" : "FAIL") << " ("
                      << rep.checks.size() << " checks, " << ctlab::format_sig(rep.wall_seconds)
                      << " s)\n";
            for (const auto& c : rep.checks)
                if (!c.pass)
                    std::cout << "  FAIL " << c.name << ": measured "
                              << ctlab::format_sig(c.measured) << " vs threshold "
                              << ctlab::format_sig(c.threshold)
                              << (c.note.empty() ? "" : " [" + c.note + "]") << "\n";
        }
        return all_pass ? 0 : 1;
    } catch (const ctlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
