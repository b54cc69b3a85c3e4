#include "uavplan/cli.hpp"

#include "uavplan/artifacts.hpp"
#include "uavplan/baseline.hpp"
#include "uavplan/errors.hpp"
#include "uavplan/evo.hpp"
#include "uavplan/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace uavplan::cli {

namespace {

using nlohmann::ordered_json;

Scenario load(const std::filesystem::path& scenario_path) {
    return scenario_path.empty() ? default_scenario() : load_scenario(scenario_path);
}

ordered_json violations_json(const TrajectoryEvaluation& eval) {
    return {{"terrain_clearance", eval.violations.terrain_clearance},
            {"speed", eval.violations.speed},
            {"accel_x", eval.violations.accel_x},
            {"accel_y", eval.violations.accel_y},
            {"accel_z", eval.violations.accel_z},
            {"data", eval.violations.data},
            {"total", eval.total_violation}};
}

ordered_json evaluation_json(const TrajectoryEvaluation& eval) {
    ordered_json j;
    j["feasible"] = eval.feasible;
    j["objective"] = eval.objective;
    j["flight_energy"] = eval.flight_energy;
    j["comm_energy"] = eval.comm_energy;
    j["mission_time"] = eval.mission_time;
    j["collected"] = eval.collected;
    j["violations"] = violations_json(eval);
    return j;
}

std::string optimizer_summary(const std::string& mode, std::uint64_t seed, int restarts,
                              const TrajectoryEvaluation& eval, const Eigen::VectorXd& genome) {
    ordered_json j;
    j["mode"] = mode;
    j["seed"] = seed;
    j["restarts"] = restarts;
    j.update(evaluation_json(eval));
    j["genome"] = std::vector<double>(genome.begin(), genome.end());
    return j.dump(2) + "\n";
}

std::string plan_summary(std::uint64_t seed, const TrajectoryEvaluation& eval,
                         const HoverPlan& plan) {
    ordered_json j;
    j["mode"] = "fly-hover-fly";
    j["seed"] = seed;
    j.update(evaluation_json(eval));
    j["visit_order"] = plan.visit_order;
    return j.dump(2) + "\n";
}

/// Writes every artifact, then a manifest naming each file with its digest.
void write_artifacts(const std::filesystem::path& out_dir, const std::string& command,
                     const std::vector<std::pair<std::string, std::string>>& files,
                     std::ostream& diagnostics) {
    std::filesystem::create_directories(out_dir);
    ordered_json manifest;
    manifest["command"] = command;
    manifest["files"] = ordered_json::object();
    for (const auto& [name, content] : files) {
        write_file(out_dir / name, content);
        manifest["files"][name] = sha256_hex(content);
        diagnostics << "wrote " << (out_dir / name).string() << "\n";
    }
    write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    diagnostics << "wrote " << (out_dir / "manifest.json").string() << "\n";
}

std::string trajectory_csv_for(const Eigen::VectorXd& genome, const MissionSpec& spec) {
    const DecodedTrajectory traj = decode(genome, spec);
    const SampledPath path =
        sample_path(traj.control_points, spec.sample_count, traj.mission_time);
    const Kinematics kin = kinematics(path);
    const LinkTrace trace = link_trace(path, spec.nodes, spec.channel);
    return render_trajectory_csv(path, kin, trace);
}

std::string trajectory_csv_for(const HoverPlan& plan, const MissionSpec& spec) {
    const SampledPath path = sample_plan(plan, spec.sample_count);
    const Kinematics kin = kinematics(path);
    const LinkTrace trace = link_trace(path, spec.nodes, spec.channel);
    return render_trajectory_csv(path, kin, trace);
}

void describe(std::ostream& diagnostics, const TrajectoryEvaluation& eval) {
    diagnostics << (eval.feasible ? "feasible" : "infeasible")
                << ", objective " << format_double(eval.objective) << " J"
                << " (flight " << format_double(eval.flight_energy) << " J, comm "
                << format_double(eval.comm_energy) << " J), mission time "
                << format_double(eval.mission_time) << " s, total violation "
                << format_double(eval.total_violation) << "\n";
}

} // namespace

int run_optimize(const OptimizeOptions& options, std::ostream& diagnostics) {
    Scenario scenario;
    try {
        scenario = load(options.scenario_path);
    } catch (const ScenarioError& e) {
        diagnostics << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    if (options.mode != "mde-ch" && options.mode != "penalty" &&
        options.mode != "fly-hover-fly") {
        diagnostics << "error: unknown mode \"" << options.mode
                    << "\" (expected mde-ch, penalty or fly-hover-fly)\n";
        return kExitInputError;
    }

    scenario.evo.seed = options.seed;
    scenario.evo.mode =
        options.mode == "penalty" ? SelectionMode::Penalty : SelectionMode::Constrained;

    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("scenario.json", save_scenario(scenario));

    bool feasible = false;
    if (options.mode == "fly-hover-fly") {
        HoverPlan plan;
        try {
            plan = plan_fly_hover_fly(scenario.mission, scenario.baseline);
        } catch (const TerrainConflictError& e) {
            diagnostics << "planning failed: " << e.what() << "\n";
            return kExitInfeasible;
        }
        const TrajectoryEvaluation eval = evaluate_plan(plan, scenario.mission);
        feasible = eval.feasible;
        files.emplace_back("summary.json", plan_summary(options.seed, eval, plan));
        files.emplace_back("trajectory.csv", trajectory_csv_for(plan, scenario.mission));
        files.emplace_back("history.csv", render_history_csv({}));
        describe(diagnostics, eval);
    } else {
        const RunResult result = run(scenario.mission, scenario.evo);
        feasible = result.feasible;
        files.emplace_back("summary.json",
                           optimizer_summary(options.mode, options.seed, result.restarts_used,
                                             result.best_evaluation, result.best_genome));
        files.emplace_back("trajectory.csv",
                           trajectory_csv_for(result.best_genome, scenario.mission));
        files.emplace_back("history.csv", render_history_csv(result.history));
        ordered_json genome_record;
        genome_record["mode"] = options.mode;
        genome_record["seed"] = options.seed;
        genome_record["restarts"] = result.restarts_used;
        genome_record["genome"] =
            std::vector<double>(result.best_genome.begin(), result.best_genome.end());
        files.emplace_back("genome.json", genome_record.dump(2) + "\n");
        describe(diagnostics, result.best_evaluation);
    }

    write_artifacts(options.out_dir, "optimize", files, diagnostics);
    return feasible ? kExitOk : kExitInfeasible;
}

int run_evaluate(const EvaluateOptions& options, std::ostream& diagnostics) {
    Scenario scenario;
    std::string genome_text;
    try {
        scenario = load(options.scenario_path);
        genome_text = read_file(options.genome_path);
    } catch (const std::runtime_error& e) {
        diagnostics << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    std::string mode;
    std::uint64_t seed = 0;
    int restarts = 0;
    Eigen::VectorXd genome;
    try {
        const auto j = nlohmann::json::parse(genome_text);
        if (!j.is_object() || !j.contains("genome") || !j.at("genome").is_array())
            throw ScenarioError("genome file must be an object with a \"genome\" array");
        mode = j.value("mode", std::string("mde-ch"));
        seed = j.value("seed", static_cast<std::uint64_t>(0));
        restarts = j.value("restarts", 0);
        const auto& g = j.at("genome");
        genome.resize(static_cast<Eigen::Index>(g.size()));
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!g[i].is_number())
                throw ScenarioError("genome entries must be numbers");
            genome(static_cast<Eigen::Index>(i)) = g[i].get<double>();
        }
    } catch (const nlohmann::json::parse_error& e) {
        diagnostics << "error: " << options.genome_path.string() << ": " << e.what() << "\n";
        return kExitInputError;
    } catch (const ScenarioError& e) {
        diagnostics << "error: " << options.genome_path.string() << ": " << e.what() << "\n";
        return kExitInputError;
    }

    TrajectoryEvaluation eval;
    try {
        eval = evaluate(genome, scenario.mission);
    } catch (const std::invalid_argument& e) {
        diagnostics << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    write_artifacts(options.out_dir, "evaluate",
                    {{"summary.json", optimizer_summary(mode, seed, restarts, eval, genome)}},
                    diagnostics);
    describe(diagnostics, eval);
    return eval.feasible ? kExitOk : kExitInfeasible;
}

namespace {

/// Sweep grammar: "Qth=<start>:<stop>:<step>", megabits, endpoints inclusive.
/// start > stop yields an empty sweep; step must be positive.
std::vector<double> parse_sweep(const std::string& sweep) {
    const std::string prefix = "Qth=";
    if (sweep.rfind(prefix, 0) != 0)
        throw ScenarioError("sweep must look like Qth=<start>:<stop>:<step>");
    const std::string body = sweep.substr(prefix.size());
    double start = 0.0, stop = 0.0, step = 0.0;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(body);
    in >> start >> colon1 >> stop >> colon2 >> step;
    if (!in || colon1 != ':' || colon2 != ':' || !(in >> std::ws).eof())
        throw ScenarioError("sweep must look like Qth=<start>:<stop>:<step>");
    if (!(step > 0.0)) throw ScenarioError("sweep step must be positive");
    std::vector<double> values;
    for (int i = 0;; ++i) {
        const double q = start + step * i;
        if (q > stop + step * 1e-9) break;
        values.push_back(q);
    }
    return values;
}

} // namespace

int run_compare(const CompareOptions& options, std::ostream& diagnostics) {
    Scenario scenario;
    std::vector<double> sweep;
    try {
        scenario = load(options.scenario_path);
        sweep = parse_sweep(options.sweep);
    } catch (const ScenarioError& e) {
        diagnostics << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    if (options.seeds < 1) {
        diagnostics << "error: --seeds must be >= 1\n";
        return kExitInputError;
    }

    std::string csv = "scheme,q_th_mbit,seed,objective,feasible,violation\n";
    for (const double q_mbit : sweep) {
        Scenario cell = scenario;
        for (GroundNode& node : cell.mission.nodes) node.data_requirement = q_mbit * 1e6;

        // The plan does not depend on the optimizer seed; compute it once.
        double plan_objective = std::numeric_limits<double>::infinity();
        double plan_violation = std::numeric_limits<double>::infinity();
        bool plan_feasible = false;
        try {
            const HoverPlan plan = plan_fly_hover_fly(cell.mission, cell.baseline);
            const TrajectoryEvaluation eval = evaluate_plan(plan, cell.mission);
            plan_objective = eval.objective;
            plan_violation = eval.total_violation;
            plan_feasible = eval.feasible;
        } catch (const TerrainConflictError& e) {
            diagnostics << "fly-hover-fly unplannable at " << format_double(q_mbit)
                        << " Mbit: " << e.what() << "\n";
        }

        for (int s = 0; s < options.seeds; ++s) {
            const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(s);
            for (const char* scheme : {"mde-ch", "penalty"}) {
                cell.evo.seed = seed;
                cell.evo.mode = std::string(scheme) == "penalty" ? SelectionMode::Penalty
                                                                 : SelectionMode::Constrained;
                const RunResult result = run(cell.mission, cell.evo);
                csv += std::string(scheme) + "," + format_double(q_mbit) + "," +
                       std::to_string(seed) + "," + format_double(result.best_objective) + "," +
                       (result.feasible ? "1" : "0") + "," +
                       format_double(result.best_evaluation.total_violation) + "\n";
                diagnostics << scheme << " q=" << format_double(q_mbit)
                            << " seed=" << seed << ": "
                            << (result.feasible ? "feasible" : "infeasible") << ", objective "
                            << format_double(result.best_objective) << "\n";
            }
            csv += std::string("fly-hover-fly,") + format_double(q_mbit) + "," +
                   std::to_string(seed) + "," + format_double(plan_objective) + "," +
                   (plan_feasible ? "1" : "0") + "," + format_double(plan_violation) + "\n";
        }
    }

    write_artifacts(options.out_dir, "compare", {{"comparison.csv", csv}}, diagnostics);
    return kExitOk;
}

int run_export_terrain(const ExportTerrainOptions& options, std::ostream& diagnostics) {
    Scenario scenario;
    try {
        scenario = load(options.scenario_path);
    } catch (const ScenarioError& e) {
        diagnostics << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    if (options.grid < 2) {
        diagnostics << "error: --grid must be >= 2\n";
        return kExitInputError;
    }

    const TerrainMap& terrain = scenario.mission.terrain;
    std::string csv = "x,y,altitude\n";
    for (int i = 0; i < options.grid; ++i) {
        const double x =
            terrain.bound_x * static_cast<double>(i) / static_cast<double>(options.grid - 1);
        for (int j = 0; j < options.grid; ++j) {
            const double y =
                terrain.bound_y * static_cast<double>(j) / static_cast<double>(options.grid - 1);
            csv += format_double(x) + "," + format_double(y) + "," +
                   format_double(altitude(terrain, x, y)) + "\n";
        }
    }

    write_artifacts(options.out_dir, "export-terrain", {{"heightmap.csv", csv}}, diagnostics);
    return kExitOk;
}

} // namespace uavplan::cli
