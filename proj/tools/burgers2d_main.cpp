#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "burgers2d/errors.hpp"
#include "burgers2d/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Structured-grid solver for the 2-D unsteady coupled Burgers equations"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    for (const char* name : {"solve", "stability", "convergence", "compare"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides the config)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot read config file " << config_path << "\n";
            return 1;
        }
        std::ostringstream buf;
        buf << in.rdbuf();

        burgers2d::RunConfig cfg = burgers2d::parse_config(buf.str());
        const auto expected = [&] {
            using burgers2d::Command;
            switch (cfg.command) {
                case Command::kSolve: return "solve";
                case Command::kStability: return "stability";
                case Command::kConvergence: return "convergence";
                case Command::kCompare: return "compare";
            }
            return "";
        }();
        if (command != expected) {
            std::cerr << "error: config declares command \"" << expected
                      << "\" but the CLI invoked \"" << command << "\"\n";
            return 1;
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;

        const burgers2d::RunSummary summary = burgers2d::run(cfg);
        std::cout << "status: " << summary.status << "  steps: " << summary.steps
                  << "  wall_seconds: " << summary.wall_seconds << "\n";
        return burgers2d::exit_code_for(summary);
    } catch (const burgers2d::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
