#include "uavplan/evo.hpp"

#include "uavplan/scenario.hpp"

#include <doctest.h>

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace uavplan;

namespace {

// Stock mission with a light data load so short runs can reach feasibility.
MissionSpec quick_mission() {
    MissionSpec spec = default_scenario().mission;
    for (auto& node : spec.nodes) node.data_requirement = 1.0e6;
    return spec;
}

EvoConfig quick_config() {
    EvoConfig cfg;
    cfg.population_size = 12;
    cfg.generations = 60;
    cfg.seed = 3;
    return cfg;
}

// No trajectory can cover the 1131 m diagonal within two seconds, so every
// attempt must exhaust its restarts.
MissionSpec impossible_mission() {
    MissionSpec spec = default_scenario().mission;
    spec.min_mission_time = 1.0;
    spec.max_mission_time = 2.0;
    return spec;
}

bool same_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

} // namespace

TEST_SUITE("evo") {

TEST_CASE("config validation") {
    CHECK_NOTHROW(validate(EvoConfig{}));

    EvoConfig bad;
    bad.population_size = 3;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    bad = EvoConfig{};
    bad.generations = 0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    bad = EvoConfig{};
    bad.amplification = 0.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    bad = EvoConfig{};
    bad.crossover_rate = 0.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad.crossover_rate = 1.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    bad = EvoConfig{};
    bad.max_restarts = -1;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    bad = EvoConfig{};
    bad.penalty_coefficient = -1.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("initial population is bounded, scored and reproducible") {
    const MissionSpec spec = quick_mission();
    const EvoConfig cfg = quick_config();
    const Population pop = init_population(spec, cfg, 0);

    REQUIRE(pop.rows.rows() == cfg.population_size);
    REQUIRE(pop.rows.cols() == spec.dimension());
    REQUIRE(pop.scores.size() == static_cast<std::size_t>(cfg.population_size));
    CHECK(pop.generation == 1);
    for (Eigen::Index i = 0; i < pop.rows.rows(); ++i)
        for (Eigen::Index j = 0; j < pop.rows.cols(); ++j) {
            CHECK(pop.rows(i, j) >= pop.lower[j]);
            CHECK(pop.rows(i, j) <= pop.upper[j]);
        }

    const auto rescored = evaluate_rows(pop.rows, spec);
    for (std::size_t i = 0; i < rescored.size(); ++i) {
        CHECK(pop.scores[i].objective == rescored[i].objective);
        CHECK(pop.scores[i].violation == rescored[i].violation);
    }

    CHECK(same_matrix(init_population(spec, cfg, 0).rows, pop.rows));
    CHECK_FALSE(same_matrix(init_population(spec, cfg, 1).rows, pop.rows));
    EvoConfig other = cfg;
    other.seed = 4;
    CHECK_FALSE(same_matrix(init_population(spec, other, 0).rows, pop.rows));
}

TEST_CASE("donors are repaired into the gene box") {
    const MissionSpec spec = quick_mission();
    EvoConfig cfg = quick_config();
    cfg.amplification = 2.0; // exaggerate steps so repair actually triggers
    const Population pop = init_population(spec, cfg, 0);

    rng::Stream stream(rng::derive_seed(cfg.seed, 0, 1));
    const Eigen::MatrixXd donors = mutate(pop, cfg, stream);
    REQUIRE(donors.rows() == pop.rows.rows());
    REQUIRE(donors.cols() == pop.rows.cols());
    for (Eigen::Index i = 0; i < donors.rows(); ++i)
        for (Eigen::Index j = 0; j < donors.cols(); ++j) {
            CHECK(donors(i, j) >= pop.lower[j]);
            CHECK(donors(i, j) <= pop.upper[j]);
        }

    rng::Stream replay(rng::derive_seed(cfg.seed, 0, 1));
    CHECK(same_matrix(mutate(pop, cfg, replay), donors));
}

TEST_CASE("crossover takes every gene from a parent and flips at least one") {
    const MissionSpec spec = quick_mission();
    const EvoConfig cfg = quick_config();
    const Population pop = init_population(spec, cfg, 0);
    rng::Stream stream(rng::derive_seed(cfg.seed, 0, 1));
    const Eigen::MatrixXd donors = mutate(pop, cfg, stream);
    const Eigen::MatrixXd trials = crossover(pop, donors, cfg, stream);

    REQUIRE(trials.rows() == pop.rows.rows());
    for (Eigen::Index i = 0; i < trials.rows(); ++i) {
        bool differs = false;
        for (Eigen::Index j = 0; j < trials.cols(); ++j) {
            const double v = trials(i, j);
            CHECK((v == pop.rows(i, j) || v == donors(i, j)));
            differs = differs || v != pop.rows(i, j);
        }
        // The forced gene guarantees donor material unless the donor happens
        // to coincide with the incumbent.
        CHECK((differs || donors.row(i) == pop.rows.row(i)));
    }
}

TEST_CASE("constrained selection never worsens a row key") {
    EvoConfig cfg;
    cfg.mode = SelectionMode::Constrained;
    Population pop;
    pop.rows = Eigen::MatrixXd::Zero(4, 2);
    pop.lower = Eigen::VectorXd::Zero(2);
    pop.upper = Eigen::VectorXd::Ones(2);
    pop.generation = 7;
    pop.scores = {{10.0, 0.0}, {10.0, 5.0}, {10.0, 5.0}, {10.0, 0.0}};

    Population trials = pop;
    trials.rows = Eigen::MatrixXd::Ones(4, 2);
    // Row 0: feasible incumbent vs infeasible trial; incumbent stays.
    // Row 1: less-violating trial wins even with a worse objective.
    // Row 2: equal violation, better objective wins.
    // Row 3: both feasible, worse objective loses.
    trials.scores = {{1.0, 1.0}, {50.0, 2.0}, {8.0, 5.0}, {11.0, 0.0}};

    const Population next = select_next(pop, trials, cfg);
    CHECK(next.generation == 8);
    CHECK(next.scores[0].violation == 0.0);
    CHECK(next.rows(0, 0) == 0.0);
    CHECK(next.scores[1].violation == 2.0);
    CHECK(next.rows(1, 0) == 1.0);
    CHECK(next.scores[2].objective == 8.0);
    CHECK(next.scores[3].objective == 10.0);
    CHECK(next.rows(3, 0) == 0.0);
}

TEST_CASE("penalty selection compares the scalarized key") {
    CHECK(penalty_objective(10.0, 2.0, 1.0) == 14.0);
    CHECK(penalty_objective(10.0, 2.0, 0.5) == 12.0);

    EvoConfig cfg;
    cfg.mode = SelectionMode::Penalty;
    cfg.penalty_coefficient = 1.0;
    Population pop;
    pop.rows = Eigen::MatrixXd::Zero(2, 1);
    pop.lower = Eigen::VectorXd::Zero(1);
    pop.upper = Eigen::VectorXd::Ones(1);
    pop.scores = {{10.0, 0.0}, {10.0, 1.0}};

    Population trials = pop;
    trials.rows = Eigen::MatrixXd::Ones(2, 1);
    // Row 0: 9 + 1 * 1^2 = 10 is not strictly better than 10; keep.
    // Row 1: 10.5 + 0 = 10.5 beats 10 + 1 = 11 despite the worse objective.
    trials.scores = {{9.0, 1.0}, {10.5, 0.0}};

    const Population next = select_next(pop, trials, cfg);
    CHECK(next.rows(0, 0) == 0.0);
    CHECK(next.rows(1, 0) == 1.0);
}

TEST_CASE("runs are deterministic") {
    const MissionSpec spec = quick_mission();
    const EvoConfig cfg = quick_config();
    const RunResult a = run(spec, cfg);
    const RunResult b = run(spec, cfg);
    CHECK(a.best_genome == b.best_genome);
    CHECK(a.best_objective == b.best_objective);
    CHECK(a.feasible == b.feasible);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].best_feasible_objective == b.history[i].best_feasible_objective);
        CHECK(a.history[i].min_violation == b.history[i].min_violation);
        CHECK(a.history[i].feasible_count == b.history[i].feasible_count);
    }

    EvoConfig reseeded = cfg;
    reseeded.seed = cfg.seed + 1;
    CHECK_FALSE(run(spec, reseeded).best_genome == a.best_genome);
}

TEST_CASE("a quick run finds a feasible plan and reports its history") {
    const MissionSpec spec = quick_mission();
    const EvoConfig cfg = quick_config();
    std::vector<std::pair<int, int>> seen; // (attempt, generation)
    const RunResult result = run(spec, cfg, [&](int attempt, const Population& pop) {
        seen.emplace_back(attempt, pop.generation);
    });

    CHECK(result.feasible);
    CHECK(result.restarts_used == 0);
    CHECK(result.best_objective == result.best_evaluation.objective);
    CHECK(result.best_evaluation.feasible);
    CHECK(result.best_evaluation.total_violation == 0.0);
    REQUIRE(result.history.size() == static_cast<std::size_t>(cfg.generations));

    REQUIRE(seen.size() == static_cast<std::size_t>(cfg.generations));
    for (std::size_t i = 0; i < seen.size(); ++i) {
        CHECK(seen[i].first == 0);
        CHECK(seen[i].second == static_cast<int>(i) + 1);
    }

    // Generations number consecutively and the best-feasible trace is
    // non-increasing once it exists.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < result.history.size(); ++i) {
        CHECK(result.history[i].generation == static_cast<long>(i) + 1);
        const double f = result.history[i].best_feasible_objective;
        CHECK(f <= best);
        if (std::isfinite(f)) best = f;
    }
}

TEST_CASE("an impossible mission exhausts its restarts") {
    const MissionSpec spec = impossible_mission();
    EvoConfig cfg;
    cfg.population_size = 6;
    cfg.generations = 8;
    cfg.max_restarts = 2;
    cfg.seed = 1;

    int max_attempt = 0;
    const RunResult result = run(spec, cfg, [&](int attempt, const Population&) {
        max_attempt = std::max(max_attempt, attempt);
    });

    CHECK_FALSE(result.feasible);
    CHECK(result.restarts_used == cfg.max_restarts);
    CHECK(max_attempt == cfg.max_restarts);
    REQUIRE(result.history.size() == static_cast<std::size_t>(cfg.generations * 3));
    // Generation numbering continues across restarts.
    CHECK(result.history.back().generation == cfg.generations * 3);
    CHECK(result.history.back().feasible_count == 0);
    CHECK(std::isinf(result.history.back().best_feasible_objective));
    CHECK(result.best_evaluation.total_violation > 0.0);
}

TEST_CASE("penalty mode runs exactly one attempt") {
    const MissionSpec spec = impossible_mission();
    EvoConfig cfg;
    cfg.population_size = 6;
    cfg.generations = 8;
    cfg.max_restarts = 5;
    cfg.mode = SelectionMode::Penalty;
    cfg.seed = 1;

    const RunResult result = run(spec, cfg);
    CHECK_FALSE(result.feasible);
    CHECK(result.restarts_used == 0);
    CHECK(result.history.size() == static_cast<std::size_t>(cfg.generations));
}

} // TEST_SUITE
