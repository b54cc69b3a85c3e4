#pragma once

#include "uavplan/mission.hpp"

#include <Eigen/Core>

#include <vector>

namespace uavplan {

/// Fly-hover-fly planner options.
struct BaselineConfig {
    enum class VisitOrder {
        /// Greedy: from the current position, fly to the nearest station
        /// whose connecting leg can be routed (directly or lifted).
        NearestNeighbor,
        /// Try every node permutation (small node counts only) and keep the
        /// routable order with the least flight energy.
        Exhaustive,
    };
    VisitOrder visit_order = VisitOrder::NearestNeighbor;
    /// Cruise altitude for legs that cannot fly straight; non-positive means
    /// "use the flight ceiling".
    double safe_altitude = 0.0;
};

/// One constant-velocity straight segment, flown at max_speed.
struct PlanSegment {
    Eigen::Vector3d from = Eigen::Vector3d::Zero();
    Eigen::Vector3d to = Eigen::Vector3d::Zero();
    double duration = 0.0;         ///< s
    double horizontal_speed = 0.0; ///< m/s
    double vertical_speed = 0.0;   ///< m/s, signed
    double energy = 0.0;           ///< J, propulsion power * duration
};

/// A hover above one node: lowest admissible altitude (terrain + clearance),
/// which maximizes the overhead rate, held until the node's data requirement
/// is met exactly.
struct HoverStation {
    int node_index = -1;
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    double rate = 0.0;          ///< bit/s at the station
    double duration = 0.0;      ///< s, data_requirement / rate
    double flight_energy = 0.0; ///< J, hover power * duration
    double comm_energy = 0.0;   ///< J, comm power * duration
};

/// Fly-hover-fly mission: straight max-speed legs between hover stations,
/// in visit order, with terrain-conflicting legs lifted to the safe cruise
/// altitude via vertical transitions.
struct HoverPlan {
    std::vector<int> visit_order;       ///< node indices in flight order
    std::vector<HoverStation> stations; ///< aligned with visit_order
    std::vector<PlanSegment> segments;  ///< all flight segments in order
    double flight_energy = 0.0;         ///< J, legs + hovering
    double comm_energy = 0.0;           ///< J, reception only
    double mission_time = 0.0;          ///< s, flight + hovering
    bool within_time_limit = false;     ///< mission_time <= max_mission_time
};

/// Builds the fly-hover-fly plan for a mission. Throws TerrainConflictError
/// when a station has no admissible altitude or some required leg cannot be
/// routed even at the safe altitude; std::invalid_argument when a station
/// cannot reach its node's rate threshold.
HoverPlan plan_fly_hover_fly(const MissionSpec& spec, const BaselineConfig& cfg = {});

/// The plan's own exact accounting in the shared evaluation record: leg and
/// hover energies, reception energy, delivered data equal to each node's
/// requirement. All violation terms are zero by construction; feasible
/// reflects the mission-time limit.
TrajectoryEvaluation evaluate_plan(const HoverPlan& plan, const MissionSpec& spec);

/// Densely samples the plan's piecewise-linear position timeline on the
/// n-point normalized grid, in the same format the curve sampler produces,
/// so plans export through the same trajectory pipeline.
SampledPath sample_plan(const HoverPlan& plan, int sample_count);

} // namespace uavplan
