#include "uavplan/cli.hpp"

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Energy-aware continuous UAV trajectory planning for ground-node data "
                 "collection over synthetic terrain"};
    app.require_subcommand(1);

    std::string scenario;
    std::string out_dir = ".";

    uavplan::cli::OptimizeOptions optimize_opts;
    auto* optimize = app.add_subcommand(
        "optimize", "Plan one mission and write trajectory, summary and history artifacts");
    optimize->add_option("--scenario", scenario, "Scenario JSON file (default: built-in)");
    optimize->add_option("--seed", optimize_opts.seed, "Master seed for the optimizer");
    optimize->add_option("--mode", optimize_opts.mode, "Planning scheme")
        ->check(CLI::IsMember({"mde-ch", "penalty", "fly-hover-fly"}));
    optimize->add_option("--out", out_dir, "Output directory (default: current)");

    uavplan::cli::EvaluateOptions evaluate_opts;
    std::string genome_path;
    auto* evaluate = app.add_subcommand(
        "evaluate", "Re-score a saved genome against a scenario and write summary.json");
    evaluate->add_option("--scenario", scenario, "Scenario JSON file (default: built-in)");
    evaluate->add_option("--genome", genome_path, "genome.json produced by optimize")
        ->required();
    evaluate->add_option("--out", out_dir, "Output directory (default: current)");

    uavplan::cli::CompareOptions compare_opts;
    auto* compare = app.add_subcommand(
        "compare", "Sweep the per-node data requirement across every scheme; writes "
                   "comparison.csv");
    compare->add_option("--scenario", scenario, "Scenario JSON file (default: built-in)");
    compare->add_option("--sweep", compare_opts.sweep,
                        "Data-requirement sweep, Qth=<start>:<stop>:<step> in Mbit");
    compare->add_option("--seeds", compare_opts.seeds, "Seeds per sweep point");
    compare->add_option("--seed", compare_opts.seed, "First seed");
    compare->add_option("--out", out_dir, "Output directory (default: current)");

    uavplan::cli::ExportTerrainOptions terrain_opts;
    auto* export_terrain =
        app.add_subcommand("export-terrain", "Sample the terrain into heightmap.csv");
    export_terrain->add_option("--scenario", scenario, "Scenario JSON file (default: built-in)");
    export_terrain->add_option("--grid", terrain_opts.grid, "Grid points per axis (>= 2)");
    export_terrain->add_option("--out", out_dir, "Output directory (default: current)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? uavplan::cli::kExitOk : uavplan::cli::kExitInputError;
    }

    try {
        if (optimize->parsed()) {
            optimize_opts.scenario_path = scenario;
            optimize_opts.out_dir = out_dir;
            return uavplan::cli::run_optimize(optimize_opts, std::cout);
        }
        if (evaluate->parsed()) {
            evaluate_opts.scenario_path = scenario;
            evaluate_opts.genome_path = genome_path;
            evaluate_opts.out_dir = out_dir;
            return uavplan::cli::run_evaluate(evaluate_opts, std::cout);
        }
        if (compare->parsed()) {
            compare_opts.scenario_path = scenario;
            compare_opts.out_dir = out_dir;
            return uavplan::cli::run_compare(compare_opts, std::cout);
        }
        terrain_opts.scenario_path = scenario;
        terrain_opts.out_dir = out_dir;
        return uavplan::cli::run_export_terrain(terrain_opts, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
