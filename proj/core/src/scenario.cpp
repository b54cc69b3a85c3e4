#include "uavplan/scenario.hpp"

#include "uavplan/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>

namespace uavplan {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(std::string_view origin, const std::string& path, const std::string& msg) {
    throw ScenarioError(std::string(origin) + ": " + (path.empty() ? "scenario" : path) + ": " +
                        msg);
}

void expect_object(std::string_view origin, const std::string& path, const json& j,
                   std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(origin, path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (key == k) {
                known = true;
                break;
            }
        if (!known) fail(origin, path, "unknown key \"" + key + "\"");
    }
}

std::string joined(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void read_number(std::string_view origin, const std::string& path, const json& obj,
                 const char* key, double& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(origin, joined(path, key), "expected a number");
    out = v.get<double>();
}

double require_number(std::string_view origin, const std::string& path, const json& obj,
                      const char* key) {
    if (!obj.contains(key)) fail(origin, joined(path, key), "missing required field");
    const json& v = obj.at(key);
    if (!v.is_number()) fail(origin, joined(path, key), "expected a number");
    return v.get<double>();
}

void read_int(std::string_view origin, const std::string& path, const json& obj, const char* key,
              int& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(origin, joined(path, key), "expected an integer");
    out = v.get<int>();
}

void read_seed(std::string_view origin, const std::string& path, const json& obj, const char* key,
               std::uint64_t& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (v.is_number_unsigned())
        out = v.get<std::uint64_t>();
    else if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        out = static_cast<std::uint64_t>(v.get<std::int64_t>());
    else
        fail(origin, joined(path, key), "expected a non-negative integer");
}

void read_vec3(std::string_view origin, const std::string& path, const json& obj, const char* key,
               Eigen::Vector3d& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 3) fail(origin, joined(path, key), "expected [x, y, z]");
    for (int i = 0; i < 3; ++i) {
        if (!v[static_cast<std::size_t>(i)].is_number())
            fail(origin, joined(path, key), "expected [x, y, z] of numbers");
        out(i) = v[static_cast<std::size_t>(i)].get<double>();
    }
}

void parse_terrain(std::string_view origin, const json& j, TerrainMap& terrain) {
    expect_object(origin, "terrain", j, {"bounds", "bumps"});
    if (j.contains("bounds")) {
        const json& b = j.at("bounds");
        expect_object(origin, "terrain.bounds", b, {"x", "y", "z"});
        read_number(origin, "terrain.bounds", b, "x", terrain.bound_x);
        read_number(origin, "terrain.bounds", b, "y", terrain.bound_y);
        read_number(origin, "terrain.bounds", b, "z", terrain.bound_z);
    }
    if (j.contains("bumps")) {
        const json& bumps = j.at("bumps");
        if (!bumps.is_array()) fail(origin, "terrain.bumps", "expected an array");
        terrain.bumps.clear();
        for (std::size_t i = 0; i < bumps.size(); ++i) {
            const std::string path = "terrain.bumps[" + std::to_string(i) + "]";
            const json& b = bumps[i];
            expect_object(origin, path, b,
                          {"amplitude", "center_x", "center_y", "sigma_x", "sigma_y"});
            GaussianBump bump;
            bump.amplitude = require_number(origin, path, b, "amplitude");
            bump.center_x = require_number(origin, path, b, "center_x");
            bump.center_y = require_number(origin, path, b, "center_y");
            bump.sigma_x = require_number(origin, path, b, "sigma_x");
            bump.sigma_y = require_number(origin, path, b, "sigma_y");
            terrain.bumps.push_back(bump);
        }
    }
}

void parse_nodes(std::string_view origin, const json& j, std::vector<GroundNode>& nodes) {
    if (!j.is_array()) fail(origin, "nodes", "expected an array");
    nodes.clear();
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string path = "nodes[" + std::to_string(i) + "]";
        const json& n = j[i];
        expect_object(origin, path, n, {"x", "y", "data_requirement", "rate_threshold"});
        GroundNode node;
        node.position.x() = require_number(origin, path, n, "x");
        node.position.y() = require_number(origin, path, n, "y");
        node.data_requirement = require_number(origin, path, n, "data_requirement");
        node.rate_threshold = require_number(origin, path, n, "rate_threshold");
        nodes.push_back(node);
    }
}

void parse_uav(std::string_view origin, const json& j, UavParams& uav) {
    expect_object(origin, "uav", j,
                  {"weight", "air_density", "rotor_radius", "rotor_disc_area",
                   "blade_angular_velocity", "tip_speed", "rotor_solidity", "fuselage_drag_ratio",
                   "induced_power_correction", "mean_induced_speed", "profile_drag_coefficient",
                   "vertical_power_coefficient", "max_speed", "max_acceleration"});
    read_number(origin, "uav", j, "weight", uav.weight);
    read_number(origin, "uav", j, "air_density", uav.air_density);
    read_number(origin, "uav", j, "rotor_radius", uav.rotor_radius);
    read_number(origin, "uav", j, "rotor_disc_area", uav.rotor_disc_area);
    read_number(origin, "uav", j, "blade_angular_velocity", uav.blade_angular_velocity);
    read_number(origin, "uav", j, "tip_speed", uav.tip_speed);
    read_number(origin, "uav", j, "rotor_solidity", uav.rotor_solidity);
    read_number(origin, "uav", j, "fuselage_drag_ratio", uav.fuselage_drag_ratio);
    read_number(origin, "uav", j, "induced_power_correction", uav.induced_power_correction);
    read_number(origin, "uav", j, "mean_induced_speed", uav.mean_induced_speed);
    read_number(origin, "uav", j, "profile_drag_coefficient", uav.profile_drag_coefficient);
    read_number(origin, "uav", j, "vertical_power_coefficient", uav.vertical_power_coefficient);
    read_number(origin, "uav", j, "max_speed", uav.max_speed);
    if (j.contains("max_acceleration")) {
        const json& a = j.at("max_acceleration");
        expect_object(origin, "uav.max_acceleration", a, {"x", "y", "z"});
        read_number(origin, "uav.max_acceleration", a, "x", uav.max_acceleration_x);
        read_number(origin, "uav.max_acceleration", a, "y", uav.max_acceleration_y);
        read_number(origin, "uav.max_acceleration", a, "z", uav.max_acceleration_z);
    }
}

void parse_channel(std::string_view origin, const json& j, ChannelParams& ch) {
    expect_object(origin, "channel", j,
                  {"bandwidth", "los_a", "los_b", "nlos_attenuation", "path_loss_exponent",
                   "reference_snr_db", "comm_power"});
    read_number(origin, "channel", j, "bandwidth", ch.bandwidth);
    read_number(origin, "channel", j, "los_a", ch.los_a);
    read_number(origin, "channel", j, "los_b", ch.los_b);
    read_number(origin, "channel", j, "nlos_attenuation", ch.nlos_attenuation);
    read_number(origin, "channel", j, "path_loss_exponent", ch.path_loss_exponent);
    read_number(origin, "channel", j, "reference_snr_db", ch.reference_snr_db);
    read_number(origin, "channel", j, "comm_power", ch.comm_power);
}

void parse_mission(std::string_view origin, const json& j, MissionSpec& m) {
    expect_object(origin, "mission", j,
                  {"start", "end", "clearance", "min_time", "max_time", "control_points",
                   "samples", "violation_weights"});
    read_vec3(origin, "mission", j, "start", m.start);
    read_vec3(origin, "mission", j, "end", m.end);
    read_number(origin, "mission", j, "clearance", m.clearance);
    read_number(origin, "mission", j, "min_time", m.min_mission_time);
    read_number(origin, "mission", j, "max_time", m.max_mission_time);
    read_int(origin, "mission", j, "control_points", m.control_point_count);
    read_int(origin, "mission", j, "samples", m.sample_count);
    if (j.contains("violation_weights")) {
        const json& w = j.at("violation_weights");
        expect_object(origin, "mission.violation_weights", w,
                      {"terrain_clearance", "speed", "accel_x", "accel_y", "accel_z", "data"});
        read_number(origin, "mission.violation_weights", w, "terrain_clearance",
                    m.weights.terrain_clearance);
        read_number(origin, "mission.violation_weights", w, "speed", m.weights.speed);
        read_number(origin, "mission.violation_weights", w, "accel_x", m.weights.accel_x);
        read_number(origin, "mission.violation_weights", w, "accel_y", m.weights.accel_y);
        read_number(origin, "mission.violation_weights", w, "accel_z", m.weights.accel_z);
        read_number(origin, "mission.violation_weights", w, "data", m.weights.data);
    }
}

void parse_evo(std::string_view origin, const json& j, EvoConfig& e) {
    expect_object(origin, "evo", j,
                  {"population", "generations", "amplification", "crossover_rate", "seed",
                   "max_restarts", "selection", "penalty_coefficient"});
    read_int(origin, "evo", j, "population", e.population_size);
    read_int(origin, "evo", j, "generations", e.generations);
    read_number(origin, "evo", j, "amplification", e.amplification);
    read_number(origin, "evo", j, "crossover_rate", e.crossover_rate);
    read_seed(origin, "evo", j, "seed", e.seed);
    read_int(origin, "evo", j, "max_restarts", e.max_restarts);
    read_number(origin, "evo", j, "penalty_coefficient", e.penalty_coefficient);
    if (j.contains("selection")) {
        const json& v = j.at("selection");
        if (!v.is_string()) fail(origin, "evo.selection", "expected a string");
        const std::string s = v.get<std::string>();
        if (s == "constrained")
            e.mode = SelectionMode::Constrained;
        else if (s == "penalty")
            e.mode = SelectionMode::Penalty;
        else
            fail(origin, "evo.selection", "expected \"constrained\" or \"penalty\"");
    }
}

void parse_baseline(std::string_view origin, const json& j, BaselineConfig& b) {
    expect_object(origin, "baseline", j, {"visit_order", "safe_altitude"});
    read_number(origin, "baseline", j, "safe_altitude", b.safe_altitude);
    if (j.contains("visit_order")) {
        const json& v = j.at("visit_order");
        if (!v.is_string()) fail(origin, "baseline.visit_order", "expected a string");
        const std::string s = v.get<std::string>();
        if (s == "nearest-neighbor")
            b.visit_order = BaselineConfig::VisitOrder::NearestNeighbor;
        else if (s == "exhaustive")
            b.visit_order = BaselineConfig::VisitOrder::Exhaustive;
        else
            fail(origin, "baseline.visit_order",
                 "expected \"nearest-neighbor\" or \"exhaustive\"");
    }
}

/// Fills everything computable from the configured fields: hover powers,
/// linear reference SNR, node ground heights.
void derive(Scenario& s) {
    const HoverPowers hp = derive_hover_powers(s.mission.uav);
    s.mission.uav.profile_power = hp.profile;
    s.mission.uav.induced_power = hp.induced;
    s.mission.channel.reference_snr =
        ChannelParams::snr_db_to_linear(s.mission.channel.reference_snr_db);
    for (GroundNode& node : s.mission.nodes)
        node.position.z() = altitude(s.mission.terrain, node.position.x(), node.position.y());
}

} // namespace

Scenario default_scenario() {
    Scenario s;

    s.mission.terrain.bound_x = 800.0;
    s.mission.terrain.bound_y = 800.0;
    s.mission.terrain.bound_z = 122.0;
    s.mission.terrain.bumps = {
        {150.0, 200.0, 500.0, 90.0, 90.0},
        {150.0, 600.0, 500.0, 90.0, 90.0},
        {150.0, 400.0, 200.0, 90.0, 90.0},
    };

    s.mission.nodes = {
        {Eigen::Vector3d(200.0, 200.0, 0.0), 40.0e6, 1.0e6},
        {Eigen::Vector3d(600.0, 200.0, 0.0), 40.0e6, 1.0e6},
        {Eigen::Vector3d(400.0, 700.0, 0.0), 40.0e6, 1.0e6},
    };

    UavParams& uav = s.mission.uav;
    uav.weight = 20.0;
    uav.air_density = 1.225;
    uav.rotor_radius = 0.4;
    uav.rotor_disc_area = 0.503;
    uav.blade_angular_velocity = 300.0;
    uav.tip_speed = 120.0;
    uav.rotor_solidity = 0.05;
    uav.fuselage_drag_ratio = 0.6;
    uav.induced_power_correction = 0.1;
    uav.mean_induced_speed = 4.03;
    uav.profile_drag_coefficient = 0.012;
    uav.vertical_power_coefficient = 11.46;
    uav.max_speed = 30.0;
    uav.max_acceleration_x = 2.0;
    uav.max_acceleration_y = 2.0;
    uav.max_acceleration_z = 2.0;

    ChannelParams& ch = s.mission.channel;
    ch.bandwidth = 1.0e6;
    ch.los_a = 10.0;
    ch.los_b = 0.6;
    ch.nlos_attenuation = 0.2;
    ch.path_loss_exponent = 2.3;
    ch.reference_snr_db = 52.5;
    ch.comm_power = 5.0;

    s.mission.start = Eigen::Vector3d(0.0, 0.0, 100.0);
    s.mission.end = Eigen::Vector3d(800.0, 800.0, 100.0);
    s.mission.clearance = 0.5;
    s.mission.min_mission_time = 1.0;
    s.mission.max_mission_time = 500.0;
    s.mission.control_point_count = 11;
    s.mission.sample_count = 100;

    s.evo.population_size = 20;
    s.evo.generations = 2000;
    s.evo.amplification = 0.5;
    s.evo.crossover_rate = 0.5;
    s.evo.seed = 0;
    s.evo.max_restarts = 5;
    s.evo.mode = SelectionMode::Constrained;
    s.evo.penalty_coefficient = 1.0;

    derive(s);
    return s;
}

Scenario parse_scenario(const std::string& json_text, std::string_view origin) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string(origin) + ": " + e.what());
    }

    Scenario s = default_scenario();
    expect_object(origin, "", j,
                  {"terrain", "nodes", "uav", "channel", "mission", "evo", "baseline"});
    if (j.contains("terrain")) parse_terrain(origin, j.at("terrain"), s.mission.terrain);
    if (j.contains("nodes")) parse_nodes(origin, j.at("nodes"), s.mission.nodes);
    if (j.contains("uav")) parse_uav(origin, j.at("uav"), s.mission.uav);
    if (j.contains("channel")) parse_channel(origin, j.at("channel"), s.mission.channel);
    if (j.contains("mission")) parse_mission(origin, j.at("mission"), s.mission);
    if (j.contains("evo")) parse_evo(origin, j.at("evo"), s.evo);
    if (j.contains("baseline")) parse_baseline(origin, j.at("baseline"), s.baseline);

    derive(s);
    try {
        validate(s.mission);
        validate(s.evo);
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string(origin) + ": " + e.what());
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError("cannot read scenario file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path.string());
}

std::string save_scenario(const Scenario& s) {
    ordered_json j;

    j["terrain"]["bounds"] = {{"x", s.mission.terrain.bound_x},
                              {"y", s.mission.terrain.bound_y},
                              {"z", s.mission.terrain.bound_z}};
    j["terrain"]["bumps"] = ordered_json::array();
    for (const GaussianBump& b : s.mission.terrain.bumps)
        j["terrain"]["bumps"].push_back({{"amplitude", b.amplitude},
                                         {"center_x", b.center_x},
                                         {"center_y", b.center_y},
                                         {"sigma_x", b.sigma_x},
                                         {"sigma_y", b.sigma_y}});

    j["nodes"] = ordered_json::array();
    for (const GroundNode& n : s.mission.nodes)
        j["nodes"].push_back({{"x", n.position.x()},
                              {"y", n.position.y()},
                              {"data_requirement", n.data_requirement},
                              {"rate_threshold", n.rate_threshold}});

    const UavParams& uav = s.mission.uav;
    j["uav"] = {{"weight", uav.weight},
                {"air_density", uav.air_density},
                {"rotor_radius", uav.rotor_radius},
                {"rotor_disc_area", uav.rotor_disc_area},
                {"blade_angular_velocity", uav.blade_angular_velocity},
                {"tip_speed", uav.tip_speed},
                {"rotor_solidity", uav.rotor_solidity},
                {"fuselage_drag_ratio", uav.fuselage_drag_ratio},
                {"induced_power_correction", uav.induced_power_correction},
                {"mean_induced_speed", uav.mean_induced_speed},
                {"profile_drag_coefficient", uav.profile_drag_coefficient},
                {"vertical_power_coefficient", uav.vertical_power_coefficient},
                {"max_speed", uav.max_speed},
                {"max_acceleration",
                 {{"x", uav.max_acceleration_x},
                  {"y", uav.max_acceleration_y},
                  {"z", uav.max_acceleration_z}}}};

    const ChannelParams& ch = s.mission.channel;
    j["channel"] = {{"bandwidth", ch.bandwidth},
                    {"los_a", ch.los_a},
                    {"los_b", ch.los_b},
                    {"nlos_attenuation", ch.nlos_attenuation},
                    {"path_loss_exponent", ch.path_loss_exponent},
                    {"reference_snr_db", ch.reference_snr_db},
                    {"comm_power", ch.comm_power}};

    j["mission"] = {
        {"start", {s.mission.start.x(), s.mission.start.y(), s.mission.start.z()}},
        {"end", {s.mission.end.x(), s.mission.end.y(), s.mission.end.z()}},
        {"clearance", s.mission.clearance},
        {"min_time", s.mission.min_mission_time},
        {"max_time", s.mission.max_mission_time},
        {"control_points", s.mission.control_point_count},
        {"samples", s.mission.sample_count},
        {"violation_weights",
         {{"terrain_clearance", s.mission.weights.terrain_clearance},
          {"speed", s.mission.weights.speed},
          {"accel_x", s.mission.weights.accel_x},
          {"accel_y", s.mission.weights.accel_y},
          {"accel_z", s.mission.weights.accel_z},
          {"data", s.mission.weights.data}}}};

    j["evo"] = {{"population", s.evo.population_size},
                {"generations", s.evo.generations},
                {"amplification", s.evo.amplification},
                {"crossover_rate", s.evo.crossover_rate},
                {"seed", s.evo.seed},
                {"max_restarts", s.evo.max_restarts},
                {"selection", s.evo.mode == SelectionMode::Penalty ? "penalty" : "constrained"},
                {"penalty_coefficient", s.evo.penalty_coefficient}};

    j["baseline"] = {
        {"visit_order", s.baseline.visit_order == BaselineConfig::VisitOrder::Exhaustive
                            ? "exhaustive"
                            : "nearest-neighbor"},
        {"safe_altitude", s.baseline.safe_altitude}};

    return j.dump(2) + "\n";
}

} // namespace uavplan
