#include "uavplan/evo.hpp"
#include "uavplan/scenario.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace uavplan;

void bm_terrain_altitude(benchmark::State& state) {
    const Scenario s = default_scenario();
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(altitude(s.mission.terrain, x, 400.0));
        x += 0.37;
        if (x > 800.0) x = 0.0;
    }
}
BENCHMARK(bm_terrain_altitude);

void bm_sample_path(benchmark::State& state) {
    const Scenario s = default_scenario();
    const Eigen::VectorXd genome =
        (s.mission.lower_bounds() + s.mission.upper_bounds()) / 2.0;
    const DecodedTrajectory traj = decode(genome, s.mission);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sample_path(traj.control_points, s.mission.sample_count, traj.mission_time));
}
BENCHMARK(bm_sample_path);

void bm_evaluate(benchmark::State& state) {
    const Scenario s = default_scenario();
    const Eigen::VectorXd genome =
        (s.mission.lower_bounds() + s.mission.upper_bounds()) / 2.0;
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(genome, s.mission));
}
BENCHMARK(bm_evaluate);

void bm_evolution_step(benchmark::State& state) {
    const Scenario s = default_scenario();
    EvoConfig cfg = s.evo;
    cfg.seed = 7;
    Population pop = init_population(s.mission, cfg);
    std::uint64_t g = 1;
    for (auto _ : state) {
        rng::Stream stream(rng::derive_seed(cfg.seed, 0, g++));
        const Eigen::MatrixXd donors = mutate(pop, cfg, stream);
        Population trials;
        trials.rows = crossover(pop, donors, cfg, stream);
        trials.lower = pop.lower;
        trials.upper = pop.upper;
        trials.scores = evaluate_rows(trials.rows, s.mission);
        pop = select_next(pop, trials, cfg);
    }
}
BENCHMARK(bm_evolution_step);

} // namespace

BENCHMARK_MAIN();
