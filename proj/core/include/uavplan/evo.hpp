#pragma once

#include "uavplan/mission.hpp"
#include "uavplan/rng.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <vector>

namespace uavplan {

/// How the per-row survivor is chosen.
enum class SelectionMode {
    /// Feasibility first: compare total violations; on equal violation
    /// (including both zero) compare objectives. Strictly smaller wins.
    Constrained,
    /// Single scalar objective + tau * violation^2, strictly smaller wins.
    Penalty,
};

struct EvoConfig {
    int population_size = 20;          ///< N
    int generations = 2000;            ///< G; G - 1 evolution steps per attempt
    double amplification = 0.5;        ///< lambda, donor step size
    double crossover_rate = 0.5;       ///< gamma in (0, 1)
    std::uint64_t seed = 0;            ///< master seed; all draws derive from it
    int max_restarts = 5;              ///< extra attempts when no feasible row at generation G
    SelectionMode mode = SelectionMode::Constrained;
    double penalty_coefficient = 1.0;  ///< tau, Penalty mode only
};

struct RowScore {
    double objective = 0.0; ///< J
    double violation = 0.0; ///< weighted total violation
};

/// One generation of candidate genomes with cached scores and the gene
/// bounds they live in.
struct Population {
    Eigen::MatrixXd rows;        ///< N x D, one genome per row
    std::vector<RowScore> scores; ///< N, aligned with rows
    Eigen::VectorXd lower;        ///< D gene lower bounds
    Eigen::VectorXd upper;        ///< D gene upper bounds
    int generation = 1;
};

struct GenerationStats {
    long generation = 0;                   ///< 1-based, counts across restarts
    double best_feasible_objective = 0.0;  ///< +inf until a feasible row exists
    double min_violation = 0.0;
    int feasible_count = 0;
};

struct RunResult {
    Eigen::VectorXd best_genome;
    double best_objective = 0.0;
    bool feasible = false;
    TrajectoryEvaluation best_evaluation;
    std::vector<GenerationStats> history; ///< one row per generation per attempt
    int restarts_used = 0;
};

/// Observation hook invoked after every generation becomes current
/// (including the initial one). `attempt` is 0 for the first initialization
/// and increments per restart. Must not mutate anything.
using GenerationObserver = std::function<void(int attempt, const Population&)>;

/// Scores every row of a genome matrix. Row evaluations are independent.
std::vector<RowScore> evaluate_rows(const Eigen::MatrixXd& rows, const MissionSpec& spec);

/// Uniform random initial population within the gene bounds; scores filled.
/// `attempt` selects the per-restart substream of the master seed.
Population init_population(const MissionSpec& spec, const EvoConfig& cfg,
                           std::uint64_t attempt = 0);

/// Donor matrix: row i is X[r1_i] + lambda * (X[r2_i] - X[r3_i]) where r1,
/// r2, r3 are three independent unconstrained permutations of the row
/// indices (a row may draw itself). Out-of-bound genes are repaired to the
/// violated bound. Consumes exactly three permutations from `stream`.
Eigen::MatrixXd mutate(const Population& pop, const EvoConfig& cfg, rng::Stream& stream);

/// Binomial crossover of incumbents and donors: gene (i, j) comes from the
/// donor when a uniform draw is below crossover_rate, and one random gene
/// per row is always forced to the donor. Consumes the N x D mask draws
/// (row-major), then N forced-column draws.
Eigen::MatrixXd crossover(const Population& pop, const Eigen::MatrixXd& donors,
                          const EvoConfig& cfg, rng::Stream& stream);

/// Per-row survivor selection between incumbents and equally indexed trials
/// under the configured mode. A trial replaces its incumbent only when its
/// key is strictly smaller, so per-row keys never get worse and a feasible
/// row never turns infeasible in Constrained mode.
Population select_next(const Population& pop, const Population& trials, const EvoConfig& cfg);

/// Penalty-mode scalar: objective + tau * violation^2.
double penalty_objective(double objective, double violation, double penalty_coefficient) noexcept;
double penalty_objective(const TrajectoryEvaluation& eval, double penalty_coefficient) noexcept;

/// Full optimization run. Evolves G - 1 steps from a fresh population; in
/// Constrained mode, when generation G holds no feasible row the run
/// restarts with a fresh substream, up to max_restarts times. Returns the
/// feasible row with the smallest objective, or the minimum-violation row
/// flagged infeasible when every attempt is exhausted. Penalty mode runs a
/// single attempt and returns the row with the smallest penalty scalar.
/// Deterministic: identical spec + config give bit-identical results.
RunResult run(const MissionSpec& spec, const EvoConfig& cfg,
              const GenerationObserver& observer = {});

/// Throws std::invalid_argument unless N >= 4, G >= 1, lambda > 0,
/// 0 < gamma < 1, max_restarts >= 0 and tau >= 0.
void validate(const EvoConfig& cfg);

} // namespace uavplan
