#include "uavplan/evo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace uavplan {

// Draw-order contract, per attempt `a` of a run with master seed `s`:
//   stream derive_seed(s, a, 0):     N * D init draws, row-major
//   stream derive_seed(s, a, g) for each evolution step g in [1, G - 1]:
//     three row permutations (donor bases, then each difference operand),
//     then the N * D crossover mask draws row-major,
//     then N forced-column draws.
// Evaluations draw nothing, so scoring order and parallelism cannot change
// the results.

void validate(const EvoConfig& cfg) {
    if (cfg.population_size < 4)
        throw std::invalid_argument("evo: population size must be >= 4");
    if (cfg.generations < 1) throw std::invalid_argument("evo: generations must be >= 1");
    if (!(cfg.amplification > 0.0)) throw std::invalid_argument("evo: amplification must be > 0");
    if (!(cfg.crossover_rate > 0.0 && cfg.crossover_rate < 1.0))
        throw std::invalid_argument("evo: crossover rate must be in (0, 1)");
    if (cfg.max_restarts < 0) throw std::invalid_argument("evo: max restarts must be >= 0");
    if (!(cfg.penalty_coefficient >= 0.0))
        throw std::invalid_argument("evo: penalty coefficient must be >= 0");
}

std::vector<RowScore> evaluate_rows(const Eigen::MatrixXd& rows, const MissionSpec& spec) {
    std::vector<RowScore> scores(static_cast<std::size_t>(rows.rows()));
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        const TrajectoryEvaluation eval = evaluate(rows.row(i).transpose(), spec);
        scores[static_cast<std::size_t>(i)] = {eval.objective, eval.total_violation};
    }
    return scores;
}

Population init_population(const MissionSpec& spec, const EvoConfig& cfg, std::uint64_t attempt) {
    validate(cfg);
    const int d = spec.dimension();
    Population pop;
    pop.lower = spec.lower_bounds();
    pop.upper = spec.upper_bounds();
    pop.rows.resize(cfg.population_size, d);
    pop.generation = 1;

    rng::Stream stream(rng::derive_seed(cfg.seed, attempt, 0));
    for (int i = 0; i < cfg.population_size; ++i)
        for (int j = 0; j < d; ++j)
            pop.rows(i, j) = pop.lower(j) + (pop.upper(j) - pop.lower(j)) * stream.canonical();

    pop.scores = evaluate_rows(pop.rows, spec);
    return pop;
}

Eigen::MatrixXd mutate(const Population& pop, const EvoConfig& cfg, rng::Stream& stream) {
    const auto n = static_cast<int>(pop.rows.rows());
    const auto d = static_cast<int>(pop.rows.cols());
    const std::vector<int> base = stream.permutation(n);
    const std::vector<int> plus = stream.permutation(n);
    const std::vector<int> minus = stream.permutation(n);

    Eigen::MatrixXd donors(n, d);
    for (int i = 0; i < n; ++i)
        donors.row(i) =
            pop.rows.row(base[static_cast<std::size_t>(i)]) +
            cfg.amplification * (pop.rows.row(plus[static_cast<std::size_t>(i)]) -
                                 pop.rows.row(minus[static_cast<std::size_t>(i)]));

    // Bound repair: a gene past a bound is replaced by that bound.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) {
            if (donors(i, j) > pop.upper(j)) donors(i, j) = pop.upper(j);
            if (donors(i, j) < pop.lower(j)) donors(i, j) = pop.lower(j);
        }
    return donors;
}

Eigen::MatrixXd crossover(const Population& pop, const Eigen::MatrixXd& donors,
                          const EvoConfig& cfg, rng::Stream& stream) {
    const auto n = static_cast<int>(pop.rows.rows());
    const auto d = static_cast<int>(pop.rows.cols());
    if (donors.rows() != n || donors.cols() != d)
        throw std::invalid_argument("crossover: donor matrix shape mismatch");

    Eigen::MatrixXd trials(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            trials(i, j) = stream.canonical() < cfg.crossover_rate ? donors(i, j) : pop.rows(i, j);
    for (int i = 0; i < n; ++i) {
        const auto forced = static_cast<int>(stream.bounded(static_cast<std::uint64_t>(d)));
        trials(i, forced) = donors(i, forced);
    }
    return trials;
}

namespace {

bool trial_wins(const RowScore& trial, const RowScore& incumbent, const EvoConfig& cfg) {
    if (cfg.mode == SelectionMode::Penalty)
        return penalty_objective(trial.objective, trial.violation, cfg.penalty_coefficient) <
               penalty_objective(incumbent.objective, incumbent.violation, cfg.penalty_coefficient);
    if (trial.violation != incumbent.violation) return trial.violation < incumbent.violation;
    return trial.objective < incumbent.objective;
}

} // namespace

Population select_next(const Population& pop, const Population& trials, const EvoConfig& cfg) {
    if (trials.rows.rows() != pop.rows.rows() || trials.rows.cols() != pop.rows.cols())
        throw std::invalid_argument("select_next: population shape mismatch");
    Population next;
    next.lower = pop.lower;
    next.upper = pop.upper;
    next.generation = pop.generation + 1;
    next.rows = pop.rows;
    next.scores = pop.scores;
    for (Eigen::Index i = 0; i < pop.rows.rows(); ++i) {
        const auto row = static_cast<std::size_t>(i);
        if (trial_wins(trials.scores[row], pop.scores[row], cfg)) {
            next.rows.row(i) = trials.rows.row(i);
            next.scores[row] = trials.scores[row];
        }
    }
    return next;
}

double penalty_objective(double objective, double violation, double penalty_coefficient) noexcept {
    return objective + penalty_coefficient * violation * violation;
}

double penalty_objective(const TrajectoryEvaluation& eval, double penalty_coefficient) noexcept {
    return penalty_objective(eval.objective, eval.total_violation, penalty_coefficient);
}

namespace {

GenerationStats stats_of(const Population& pop, long generation) {
    GenerationStats s;
    s.generation = generation;
    s.best_feasible_objective = std::numeric_limits<double>::infinity();
    s.min_violation = std::numeric_limits<double>::infinity();
    s.feasible_count = 0;
    for (const RowScore& score : pop.scores) {
        s.min_violation = std::min(s.min_violation, score.violation);
        if (score.violation == 0.0) {
            ++s.feasible_count;
            s.best_feasible_objective = std::min(s.best_feasible_objective, score.objective);
        }
    }
    return s;
}

// Index of the final-scan winner under the constrained ordering:
// lowest violation, then lowest objective, then lowest index.
Eigen::Index constrained_best_row(const Population& pop) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < pop.rows.rows(); ++i) {
        const RowScore& a = pop.scores[static_cast<std::size_t>(i)];
        const RowScore& b = pop.scores[static_cast<std::size_t>(best)];
        if (a.violation < b.violation ||
            (a.violation == b.violation && a.objective < b.objective))
            best = i;
    }
    return best;
}

Eigen::Index penalty_best_row(const Population& pop, double tau) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < pop.rows.rows(); ++i) {
        const RowScore& a = pop.scores[static_cast<std::size_t>(i)];
        const RowScore& b = pop.scores[static_cast<std::size_t>(best)];
        if (penalty_objective(a.objective, a.violation, tau) <
            penalty_objective(b.objective, b.violation, tau))
            best = i;
    }
    return best;
}

} // namespace

RunResult run(const MissionSpec& spec, const EvoConfig& cfg, const GenerationObserver& observer) {
    validate(cfg);
    validate(spec);

    RunResult result;
    // Best (violation, objective) row over the final populations of failed
    // attempts, reported when every attempt ends infeasible.
    bool have_fallback = false;
    RowScore fallback_score{};
    Eigen::VectorXd fallback_genome;

    long generation_base = 0;
    int attempt = 0;
    while (true) {
        Population pop = init_population(spec, cfg, static_cast<std::uint64_t>(attempt));
        result.history.push_back(stats_of(pop, generation_base + pop.generation));
        if (observer) observer(attempt, pop);

        for (int g = 1; g <= cfg.generations - 1; ++g) {
            rng::Stream stream(
                rng::derive_seed(cfg.seed, static_cast<std::uint64_t>(attempt),
                                 static_cast<std::uint64_t>(g)));
            const Eigen::MatrixXd donors = mutate(pop, cfg, stream);

            Population trials;
            trials.rows = crossover(pop, donors, cfg, stream);
            trials.lower = pop.lower;
            trials.upper = pop.upper;
            trials.generation = pop.generation;
            trials.scores = evaluate_rows(trials.rows, spec);

            pop = select_next(pop, trials, cfg);
            result.history.push_back(stats_of(pop, generation_base + pop.generation));
            if (observer) observer(attempt, pop);
        }

        if (cfg.mode == SelectionMode::Penalty) {
            // The penalty scheme has no feasibility bookkeeping to restart on:
            // it reports its single attempt as is.
            const Eigen::Index best = penalty_best_row(pop, cfg.penalty_coefficient);
            result.best_genome = pop.rows.row(best).transpose();
            result.feasible = pop.scores[static_cast<std::size_t>(best)].violation == 0.0;
            result.restarts_used = 0;
            break;
        }

        const GenerationStats last = result.history.back();
        if (last.feasible_count > 0) {
            Eigen::Index best = -1;
            double best_objective = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < pop.rows.rows(); ++i) {
                const RowScore& s = pop.scores[static_cast<std::size_t>(i)];
                if (s.violation == 0.0 && s.objective < best_objective) {
                    best = i;
                    best_objective = s.objective;
                }
            }
            result.best_genome = pop.rows.row(best).transpose();
            result.feasible = true;
            result.restarts_used = attempt;
            break;
        }

        const Eigen::Index candidate = constrained_best_row(pop);
        const RowScore& score = pop.scores[static_cast<std::size_t>(candidate)];
        if (!have_fallback || score.violation < fallback_score.violation ||
            (score.violation == fallback_score.violation &&
             score.objective < fallback_score.objective)) {
            have_fallback = true;
            fallback_score = score;
            fallback_genome = pop.rows.row(candidate).transpose();
        }

        if (attempt >= cfg.max_restarts) {
            result.best_genome = fallback_genome;
            result.feasible = false;
            result.restarts_used = attempt;
            break;
        }
        generation_base += cfg.generations;
        ++attempt;
    }

    result.best_evaluation = evaluate(result.best_genome, spec);
    result.best_objective = result.best_evaluation.objective;
    return result;
}

} // namespace uavplan
