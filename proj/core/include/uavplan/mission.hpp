#pragma once

#include "uavplan/bezier.hpp"
#include "uavplan/channel.hpp"
#include "uavplan/energy.hpp"
#include "uavplan/terrain.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace uavplan {

/// Weights of the six soft constraint-violation terms. Must be positive and
/// sum to 1.
struct ViolationWeights {
    double terrain_clearance = 1.0 / 6.0;
    double speed = 1.0 / 6.0;
    double accel_x = 1.0 / 6.0;
    double accel_y = 1.0 / 6.0;
    double accel_z = 1.0 / 6.0;
    double data = 1.0 / 6.0;
};

/// Everything one trajectory evaluation needs: world, vehicle, channel,
/// endpoints, limits and discretization.
struct MissionSpec {
    Eigen::Vector3d start = Eigen::Vector3d::Zero(); ///< fixed first control point
    Eigen::Vector3d end = Eigen::Vector3d::Zero();   ///< fixed last control point
    TerrainMap terrain;
    std::vector<GroundNode> nodes;
    UavParams uav;
    ChannelParams channel;
    double clearance = 0.0;          ///< required height above ground, m
    double min_mission_time = 1.0;   ///< lower bound on T, s
    double max_mission_time = 0.0;   ///< upper bound on T, s
    int control_point_count = 0;     ///< M, including the two fixed endpoints
    int sample_count = 0;            ///< n samples on the normalized grid
    ViolationWeights weights;

    /// Decision-vector length: 3 coordinates per interior control point
    /// plus the mission time.
    int dimension() const { return 3 * (control_point_count - 2) + 1; }

    /// Per-gene bounds. Layout matches the genome: interior points as
    /// (x, y, z) triples bounded by the world box, then T.
    Eigen::VectorXd lower_bounds() const;
    Eigen::VectorXd upper_bounds() const;
};

/// Raw (unweighted) violation magnitudes, in the units of each constraint.
struct ConstraintViolations {
    double terrain_clearance = 0.0; ///< meters below the clearance surface, summed
    double speed = 0.0;             ///< m/s above the speed limit, summed
    double accel_x = 0.0;           ///< m/s^2 above the per-axis limit, summed
    double accel_y = 0.0;
    double accel_z = 0.0;
    double data = 0.0;              ///< bits short of the per-node requirement, summed
};

/// Summary record of one trajectory, shared by the optimizer and the
/// fly-hover-fly baseline so results compare like for like.
struct TrajectoryEvaluation {
    double objective = 0.0;     ///< flight_energy + comm_energy, J
    double flight_energy = 0.0; ///< J
    double comm_energy = 0.0;   ///< J
    double mission_time = 0.0;  ///< s
    std::vector<double> collected; ///< delivered bits per node
    ConstraintViolations violations;
    double total_violation = 0.0; ///< weighted sum of the six terms
    bool feasible = false;        ///< total_violation == 0 (and, for plans, within the time limit)
};

struct DecodedTrajectory {
    ControlPoints control_points;
    double mission_time = 0.0;
};

/// Genome layout: [x2, y2, z2, ..., x_{M-1}, y_{M-1}, z_{M-1}, T].
/// decode pins the first control point to start and the last to end.
/// Throws std::invalid_argument on a wrong-length genome.
DecodedTrajectory decode(const Eigen::VectorXd& genome, const MissionSpec& spec);

/// Inverse of decode on the interior points and T. Endpoints are not encoded.
Eigen::VectorXd encode(const ControlPoints& cp, double mission_time, const MissionSpec& spec);

/// Sum over samples of how far the path dips below terrain + clearance.
/// The ceiling is enforced by genome bounds, not here.
double clearance_violation(const SampledPath& path, const TerrainMap& terrain, double clearance);

/// Sum over velocity samples of speed in excess of max_speed.
double speed_violation(const Kinematics& kin, double max_speed);

struct AxisViolations {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Per-axis sums over acceleration samples of |a| in excess of the limits.
AxisViolations acceleration_violations(const Kinematics& kin, double ax_max, double ay_max,
                                       double az_max);

/// Sum over nodes of undelivered data, max(0, requirement - collected).
double data_violation(const LinkTrace& trace, std::span<const GroundNode> nodes);

/// Weighted total violation. Zero exactly when every term is zero.
double total_violation(const ConstraintViolations& v, const ViolationWeights& w) noexcept;

/// Full evaluation of one genome: decode, sample, kinematics, link trace,
/// energies and violations. Pure: identical inputs give bit-identical
/// results. Throws std::invalid_argument when the genome is out of bounds,
/// DegenerateGeometryError when a sample coincides with a node.
TrajectoryEvaluation evaluate(const Eigen::VectorXd& genome, const MissionSpec& spec);

/// Throws std::invalid_argument unless the spec is internally consistent
/// (limits positive, endpoints inside the world and above clearance,
/// weights positive and summing to 1, M >= 3, n >= 3, ...).
void validate(const MissionSpec& spec);

} // namespace uavplan
