#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace uavplan::cli {

inline constexpr int kExitOk = 0;         ///< run completed, result feasible
inline constexpr int kExitInputError = 2; ///< bad flags, scenario, or genome input
inline constexpr int kExitInfeasible = 3; ///< run completed, best result violates constraints

/// `optimize`: plan a mission and write trajectory.csv, summary.json,
/// history.csv, genome.json (optimizer modes), scenario.json and
/// manifest.json into out_dir.
struct OptimizeOptions {
    std::filesystem::path scenario_path; ///< empty: built-in default scenario
    std::uint64_t seed = 0;
    std::string mode = "mde-ch"; ///< mde-ch | penalty | fly-hover-fly
    std::filesystem::path out_dir = ".";
};
int run_optimize(const OptimizeOptions& options, std::ostream& diagnostics);

/// `evaluate`: score a saved genome against a scenario and write
/// summary.json. Evaluating the genome saved by `optimize` reproduces its
/// summary byte for byte.
struct EvaluateOptions {
    std::filesystem::path scenario_path;
    std::filesystem::path genome_path;
    std::filesystem::path out_dir = ".";
};
int run_evaluate(const EvaluateOptions& options, std::ostream& diagnostics);

/// `compare`: sweep the per-node data requirement and run every scheme at
/// every (requirement, seed) cell; writes comparison.csv.
struct CompareOptions {
    std::filesystem::path scenario_path;
    std::string sweep = "Qth=40:200:40"; ///< Mbit, start:stop:step inclusive
    int seeds = 1;
    std::uint64_t seed = 0; ///< first seed; cell s uses seed + s
    std::filesystem::path out_dir = ".";
};
int run_compare(const CompareOptions& options, std::ostream& diagnostics);

/// `export-terrain`: heightmap.csv with grid x grid rows (x,y,altitude),
/// row-major (x outer, y inner), spanning the world bounds.
struct ExportTerrainOptions {
    std::filesystem::path scenario_path;
    int grid = 81;
    std::filesystem::path out_dir = ".";
};
int run_export_terrain(const ExportTerrainOptions& options, std::ostream& diagnostics);

} // namespace uavplan::cli
