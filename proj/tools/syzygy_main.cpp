#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "syzygy/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Planar three-body syzygy experiments"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_given = false;
    int workers = 0;

    const std::vector<std::string> commands = {"simulate",    "events", "verify-thm1",
                                               "verify-thm2", "verify-thm3", "sweep",
                                               "oracle-minf"};
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--scenario", scenario_path, "scenario JSON file")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "override the scenario's sampler/sweep seed")
            ->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--workers", workers, "worker threads for sweep");
    }

    CLI11_PARSE(app, argc, argv);

    if (workers <= 0) {
        if (const char* env = std::getenv("SYZYGY_WORKERS")) workers = std::atoi(env);
        if (workers <= 0) workers = 1;
    }

    try {
        const syzygy::Scenario scenario = syzygy::load_scenario(scenario_path);
        const std::string command = app.get_subcommands().front()->get_name();
        const syzygy::RunResult result = syzygy::run_command(
            command, scenario, out_dir,
            seed_given ? std::optional<std::uint64_t>(seed) : std::nullopt, workers);
        std::cout << result.summary << "\n";
        return result.exit_code;
    } catch (const syzygy::ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return syzygy::exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return syzygy::exit_usage;
    }
}
