#pragma once

#include "uavplan/baseline.hpp"
#include "uavplan/evo.hpp"
#include "uavplan/mission.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace uavplan {

/// A complete, validated problem instance: mission, optimizer settings and
/// baseline-planner settings.
struct Scenario {
    MissionSpec mission;
    EvoConfig evo;
    BaselineConfig baseline;
};

/// The built-in reference scenario: an 800 m x 800 m world with three
/// Gaussian hills, three ground nodes, an 11-point control polygon sampled
/// at 100 points, and the stock vehicle / channel / optimizer constants.
Scenario default_scenario();

/// Parses a scenario from JSON text. Every field is optional and falls back
/// to the default scenario; unknown keys are rejected. Throws ScenarioError
/// with a field path on any syntax, type, unknown-key or value problem.
/// `origin` names the source in diagnostics.
Scenario parse_scenario(const std::string& json_text, std::string_view origin = "<string>");

/// Reads and parses a scenario file. Throws ScenarioError when the file
/// cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

/// Serializes a scenario to canonical JSON (every field explicit, fixed key
/// order). parse_scenario(save_scenario(s)) reproduces s.
std::string save_scenario(const Scenario& scenario);

} // namespace uavplan
