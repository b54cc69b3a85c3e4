#include "uavplan/cli.hpp"

#include "uavplan/artifacts.hpp"
#include "uavplan/scenario.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace uavplan;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("uavplan_cli_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path operator/(const std::string& name) const { return path / name; }
};

// Light mission so optimizer-backed commands finish in milliseconds.
const char* kQuickScenario = R"({
  "nodes": [
    {"x": 200, "y": 200, "data_requirement": 1e6, "rate_threshold": 1e6},
    {"x": 600, "y": 200, "data_requirement": 1e6, "rate_threshold": 1e6},
    {"x": 400, "y": 700, "data_requirement": 1e6, "rate_threshold": 1e6}
  ],
  "evo": {"population": 12, "generations": 60, "seed": 3}
})";

fs::path write_quick_scenario(const TempDir& dir) {
    const fs::path p = dir / "scenario.json";
    std::ofstream out(p);
    out << kQuickScenario;
    return p;
}

int tool_exit(const std::string& args) {
    const std::string cmd = std::string(UAVPLAN_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("optimize writes a complete, self-consistent artifact set") {
    const TempDir dir("optimize");
    const fs::path scenario = write_quick_scenario(dir);

    cli::OptimizeOptions opt;
    opt.scenario_path = scenario;
    opt.seed = 3;
    opt.out_dir = dir / "out";
    std::ostringstream log;
    const int rc = cli::run_optimize(opt, log);
    CHECK(rc == cli::kExitOk);

    for (const char* name :
         {"trajectory.csv", "summary.json", "history.csv", "genome.json", "scenario.json",
          "manifest.json"})
        CHECK(fs::exists(opt.out_dir / name));

    // The manifest indexes every artifact by its digest.
    const auto manifest = nlohmann::json::parse(read_file(opt.out_dir / "manifest.json"));
    CHECK(manifest.at("command") == "optimize");
    const auto& files = manifest.at("files");
    for (const auto& [name, digest] : files.items())
        CHECK(digest.get<std::string>() == sha256_hex(read_file(opt.out_dir / name)));
    CHECK(files.contains("summary.json"));
    CHECK_FALSE(files.contains("manifest.json"));

    const auto summary = nlohmann::json::parse(read_file(opt.out_dir / "summary.json"));
    CHECK(summary.at("mode") == "mde-ch");
    CHECK(summary.at("seed") == 3);
    CHECK(summary.at("feasible") == true);
    CHECK(summary.at("objective").get<double>() > 0.0);
    CHECK(summary.at("violations").at("total").get<double>() == 0.0);
    REQUIRE(summary.contains("genome"));

    // The first history generation starts at 1 and counts contiguously.
    std::istringstream hist(read_file(opt.out_dir / "history.csv"));
    std::string line;
    std::getline(hist, line);
    CHECK(line == "generation,best_feasible_objective,min_violation,feasible_count");
    int generations = 0;
    while (std::getline(hist, line)) ++generations;
    CHECK(generations == 60);
}

TEST_CASE("optimize is deterministic at the byte level") {
    const TempDir dir("determinism");
    const fs::path scenario = write_quick_scenario(dir);
    std::ostringstream log;

    cli::OptimizeOptions a;
    a.scenario_path = scenario;
    a.seed = 5;
    a.out_dir = dir / "a";
    REQUIRE(cli::run_optimize(a, log) == cli::kExitOk);

    cli::OptimizeOptions b = a;
    b.out_dir = dir / "b";
    REQUIRE(cli::run_optimize(b, log) == cli::kExitOk);

    for (const char* name : {"trajectory.csv", "summary.json", "history.csv", "genome.json"})
        CHECK(read_file(a.out_dir / name) == read_file(b.out_dir / name));

    cli::OptimizeOptions c = a;
    c.seed = 6;
    c.out_dir = dir / "c";
    REQUIRE(cli::run_optimize(c, log) != cli::kExitInputError);
    CHECK(read_file(a.out_dir / "trajectory.csv") != read_file(c.out_dir / "trajectory.csv"));
}

TEST_CASE("evaluate reproduces the optimizer summary byte for byte") {
    const TempDir dir("evaluate");
    const fs::path scenario = write_quick_scenario(dir);
    std::ostringstream log;

    cli::OptimizeOptions opt;
    opt.scenario_path = scenario;
    opt.seed = 3;
    opt.out_dir = dir / "opt";
    REQUIRE(cli::run_optimize(opt, log) == cli::kExitOk);

    cli::EvaluateOptions ev;
    ev.scenario_path = scenario;
    ev.genome_path = opt.out_dir / "genome.json";
    ev.out_dir = dir / "ev";
    CHECK(cli::run_evaluate(ev, log) == cli::kExitOk);
    CHECK(read_file(ev.out_dir / "summary.json") == read_file(opt.out_dir / "summary.json"));
}

TEST_CASE("evaluate rejects bad genome files") {
    const TempDir dir("badgenome");
    const fs::path scenario = write_quick_scenario(dir);
    std::ostringstream log;

    cli::EvaluateOptions ev;
    ev.scenario_path = scenario;
    ev.genome_path = dir / "missing.json";
    ev.out_dir = dir / "out";
    CHECK(cli::run_evaluate(ev, log) == cli::kExitInputError);

    {
        std::ofstream out(dir / "notjson.json");
        out << "{broken";
    }
    ev.genome_path = dir / "notjson.json";
    CHECK(cli::run_evaluate(ev, log) == cli::kExitInputError);

    {
        std::ofstream out(dir / "wrongshape.json");
        out << R"({"genome": "nope"})";
    }
    ev.genome_path = dir / "wrongshape.json";
    CHECK(cli::run_evaluate(ev, log) == cli::kExitInputError);

    {
        std::ofstream out(dir / "wronglen.json");
        out << R"({"genome": [1, 2, 3]})";
    }
    ev.genome_path = dir / "wronglen.json";
    CHECK(cli::run_evaluate(ev, log) == cli::kExitInputError);
}

TEST_CASE("unknown optimize mode is an input error") {
    const TempDir dir("mode");
    cli::OptimizeOptions opt;
    opt.mode = "simulated-annealing";
    opt.out_dir = dir.path;
    std::ostringstream log;
    CHECK(cli::run_optimize(opt, log) == cli::kExitInputError);
}

TEST_CASE("fly-hover-fly mode writes plan artifacts without a genome") {
    const TempDir dir("fhf");
    cli::OptimizeOptions opt;
    opt.mode = "fly-hover-fly";
    opt.out_dir = dir / "out";
    std::ostringstream log;
    CHECK(cli::run_optimize(opt, log) == cli::kExitOk);
    CHECK(fs::exists(opt.out_dir / "trajectory.csv"));
    CHECK_FALSE(fs::exists(opt.out_dir / "genome.json"));
    // No generations to report: the history holds only its header.
    CHECK(read_file(opt.out_dir / "history.csv") ==
          "generation,best_feasible_objective,min_violation,feasible_count\n");
    const auto summary = nlohmann::json::parse(read_file(opt.out_dir / "summary.json"));
    CHECK(summary.at("mode") == "fly-hover-fly");
    CHECK(summary.at("visit_order").size() == 3);
}

TEST_CASE("compare sweeps requirements across schemes and seeds") {
    const TempDir dir("compare");
    const fs::path scenario = write_quick_scenario(dir);
    std::ostringstream log;

    cli::CompareOptions cmp;
    cmp.scenario_path = scenario;
    cmp.sweep = "Qth=4:8:4";
    cmp.seeds = 2;
    cmp.out_dir = dir / "out";
    CHECK(cli::run_compare(cmp, log) == cli::kExitOk);

    std::istringstream csv(read_file(cmp.out_dir / "comparison.csv"));
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(csv, line)) lines.push_back(line);
    REQUIRE(lines.size() == 1 + 2 * 2 * 3); // 2 requirements x 2 seeds x 3 schemes
    CHECK(lines[0] == "scheme,q_th_mbit,seed,objective,feasible,violation");
    int mde = 0, penalty = 0, fhf = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].rfind("mde-ch,", 0) == 0) ++mde;
        if (lines[i].rfind("penalty,", 0) == 0) ++penalty;
        if (lines[i].rfind("fly-hover-fly,", 0) == 0) ++fhf;
    }
    CHECK(mde == 4);
    CHECK(penalty == 4);
    CHECK(fhf == 4);
}

TEST_CASE("compare rejects malformed sweeps and seed counts") {
    const TempDir dir("badsweep");
    std::ostringstream log;
    cli::CompareOptions cmp;
    cmp.out_dir = dir.path;
    cmp.sweep = "bogus";
    CHECK(cli::run_compare(cmp, log) == cli::kExitInputError);
    cmp.sweep = "Qth=40:80:-10";
    CHECK(cli::run_compare(cmp, log) == cli::kExitInputError);
    cmp.sweep = "Qth=40:80:20";
    cmp.seeds = 0;
    CHECK(cli::run_compare(cmp, log) == cli::kExitInputError);
}

TEST_CASE("export-terrain samples the world grid") {
    const TempDir dir("terrain");
    std::ostringstream log;
    cli::ExportTerrainOptions ex;
    ex.grid = 5;
    ex.out_dir = dir / "out";
    CHECK(cli::run_export_terrain(ex, log) == cli::kExitOk);

    std::istringstream csv(read_file(ex.out_dir / "heightmap.csv"));
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(csv, line)) lines.push_back(line);
    REQUIRE(lines.size() == 26);
    CHECK(lines[0] == "x,y,altitude");
    // Rows scan x in the outer loop over the full 800 m extent.
    CHECK(lines[1].rfind("0,0,", 0) == 0);
    CHECK(lines[2].rfind("0,200,", 0) == 0);
    CHECK(lines[25].rfind("800,800,", 0) == 0);

    ex.grid = 1;
    CHECK(cli::run_export_terrain(ex, log) == cli::kExitInputError);
}

TEST_CASE("the installed tool behaves at the process level") {
    CHECK(tool_exit("--help") == 0);
    CHECK(tool_exit("optimize --help") == 0);
    CHECK(tool_exit("definitely-not-a-command") == cli::kExitInputError);
    CHECK(tool_exit("optimize --mode warp-drive") == cli::kExitInputError);

    const TempDir dir("tool");
    const fs::path out = dir / "out";
    CHECK(tool_exit("optimize --mode fly-hover-fly --out " + out.string()) == 0);
    CHECK(fs::exists(out / "summary.json"));
    CHECK(tool_exit("export-terrain --grid 3 --out " + (dir / "t").string()) == 0);
}

} // TEST_SUITE
