#include "uavplan/mission.hpp"

#include "uavplan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace uavplan {

Eigen::VectorXd MissionSpec::lower_bounds() const {
    Eigen::VectorXd lower(dimension());
    lower.setZero();
    lower(dimension() - 1) = min_mission_time;
    return lower;
}

Eigen::VectorXd MissionSpec::upper_bounds() const {
    Eigen::VectorXd upper(dimension());
    const int interior = control_point_count - 2;
    for (int p = 0; p < interior; ++p) {
        upper(3 * p + 0) = terrain.bound_x;
        upper(3 * p + 1) = terrain.bound_y;
        upper(3 * p + 2) = terrain.bound_z;
    }
    upper(dimension() - 1) = max_mission_time;
    return upper;
}

DecodedTrajectory decode(const Eigen::VectorXd& genome, const MissionSpec& spec) {
    if (genome.size() != spec.dimension())
        throw std::invalid_argument("decode: genome has length " + std::to_string(genome.size()) +
                                    ", expected " + std::to_string(spec.dimension()));
    DecodedTrajectory out;
    out.control_points.points.reserve(static_cast<std::size_t>(spec.control_point_count));
    out.control_points.points.push_back(spec.start);
    const int interior = spec.control_point_count - 2;
    for (int p = 0; p < interior; ++p)
        out.control_points.points.emplace_back(genome(3 * p + 0), genome(3 * p + 1),
                                               genome(3 * p + 2));
    out.control_points.points.push_back(spec.end);
    out.mission_time = genome(spec.dimension() - 1);
    return out;
}

Eigen::VectorXd encode(const ControlPoints& cp, double mission_time, const MissionSpec& spec) {
    if (cp.count() != spec.control_point_count)
        throw std::invalid_argument("encode: control point count mismatch");
    Eigen::VectorXd genome(spec.dimension());
    const int interior = spec.control_point_count - 2;
    for (int p = 0; p < interior; ++p) {
        const Eigen::Vector3d& point = cp.points[static_cast<std::size_t>(p + 1)];
        genome(3 * p + 0) = point.x();
        genome(3 * p + 1) = point.y();
        genome(3 * p + 2) = point.z();
    }
    genome(spec.dimension() - 1) = mission_time;
    return genome;
}

double clearance_violation(const SampledPath& path, const TerrainMap& terrain, double clearance) {
    double sum = 0.0;
    for (const Eigen::Vector3d& p : path.positions) {
        const double floor = altitude(terrain, p.x(), p.y()) + clearance;
        sum += std::max(0.0, floor - p.z());
    }
    return sum;
}

double speed_violation(const Kinematics& kin, double max_speed) {
    double sum = 0.0;
    for (const double s : kin.speeds) sum += std::max(0.0, s - max_speed);
    return sum;
}

AxisViolations acceleration_violations(const Kinematics& kin, double ax_max, double ay_max,
                                  double az_max) {
    AxisViolations v;
    for (const Eigen::Vector3d& a : kin.accelerations) {
        v.x += std::max(0.0, std::abs(a.x()) - ax_max);
        v.y += std::max(0.0, std::abs(a.y()) - ay_max);
        v.z += std::max(0.0, std::abs(a.z()) - az_max);
    }
    return v;
}

double data_violation(const LinkTrace& trace, std::span<const GroundNode> nodes) {
    double sum = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
        sum += std::max(0.0, nodes[k].data_requirement - trace.collected[k]);
    return sum;
}

double total_violation(const ConstraintViolations& v, const ViolationWeights& w) noexcept {
    return w.terrain_clearance * v.terrain_clearance + w.speed * v.speed + w.accel_x * v.accel_x +
           w.accel_y * v.accel_y + w.accel_z * v.accel_z + w.data * v.data;
}

TrajectoryEvaluation evaluate(const Eigen::VectorXd& genome, const MissionSpec& spec) {
    const Eigen::VectorXd lower = spec.lower_bounds();
    const Eigen::VectorXd upper = spec.upper_bounds();
    if (genome.size() != spec.dimension())
        throw std::invalid_argument("evaluate: genome has length " + std::to_string(genome.size()) +
                                    ", expected " + std::to_string(spec.dimension()));
    for (int j = 0; j < genome.size(); ++j)
        if (!(genome(j) >= lower(j) && genome(j) <= upper(j)))
            throw std::invalid_argument("evaluate: gene " + std::to_string(j) +
                                        " outside its bounds");

    const DecodedTrajectory decoded = decode(genome, spec);
    const SampledPath path = sample_path(decoded.control_points, spec.sample_count,
                                         decoded.mission_time);
    const Kinematics kin = kinematics(path);
    const LinkTrace trace = link_trace(path, spec.nodes, spec.channel);

    TrajectoryEvaluation eval;
    eval.mission_time = decoded.mission_time;
    eval.flight_energy = flight_energy(kin, decoded.mission_time, spec.uav);
    eval.comm_energy = comm_energy(trace, decoded.mission_time, spec.channel);
    eval.objective = eval.flight_energy + eval.comm_energy;
    eval.collected = trace.collected;

    eval.violations.terrain_clearance = clearance_violation(path, spec.terrain, spec.clearance);
    eval.violations.speed = speed_violation(kin, spec.uav.max_speed);
    const AxisViolations accel =
        acceleration_violations(kin, spec.uav.max_acceleration_x, spec.uav.max_acceleration_y,
                           spec.uav.max_acceleration_z);
    eval.violations.accel_x = accel.x;
    eval.violations.accel_y = accel.y;
    eval.violations.accel_z = accel.z;
    eval.violations.data = data_violation(trace, spec.nodes);

    eval.total_violation = total_violation(eval.violations, spec.weights);
    eval.feasible = eval.total_violation == 0.0;
    return eval;
}

void validate(const MissionSpec& spec) {
    validate(spec.terrain);
    if (spec.control_point_count < 3)
        throw std::invalid_argument("mission: need at least 3 control points");
    if (spec.sample_count < 3) throw std::invalid_argument("mission: need at least 3 samples");
    if (!(spec.clearance >= 0.0)) throw std::invalid_argument("mission: clearance must be >= 0");
    if (!(spec.min_mission_time > 0.0) || !(spec.min_mission_time < spec.max_mission_time))
        throw std::invalid_argument("mission: need 0 < min time < max time");

    const auto check_endpoint = [&](const Eigen::Vector3d& p, const char* name) {
        if (!(p.x() >= 0.0 && p.x() <= spec.terrain.bound_x && p.y() >= 0.0 &&
              p.y() <= spec.terrain.bound_y && p.z() >= 0.0 && p.z() <= spec.terrain.bound_z))
            throw std::invalid_argument(std::string("mission: ") + name +
                                        " outside the world bounds");
        if (!(p.z() >= altitude(spec.terrain, p.x(), p.y()) + spec.clearance))
            throw std::invalid_argument(std::string("mission: ") + name +
                                        " below terrain plus clearance");
    };
    check_endpoint(spec.start, "start");
    check_endpoint(spec.end, "end");

    const ViolationWeights& w = spec.weights;
    const double weights[6] = {w.terrain_clearance, w.speed,   w.accel_x,
                               w.accel_y,           w.accel_z, w.data};
    double sum = 0.0;
    for (const double wi : weights) {
        if (!(wi > 0.0)) throw std::invalid_argument("mission: violation weights must be > 0");
        sum += wi;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("mission: violation weights must sum to 1");

    for (std::size_t k = 0; k < spec.nodes.size(); ++k) {
        const GroundNode& node = spec.nodes[k];
        if (!(node.position.x() >= 0.0 && node.position.x() <= spec.terrain.bound_x &&
              node.position.y() >= 0.0 && node.position.y() <= spec.terrain.bound_y))
            throw std::invalid_argument("node " + std::to_string(k) + ": outside the world bounds");
        if (!(node.rate_threshold > 0.0))
            throw std::invalid_argument("node " + std::to_string(k) +
                                        ": rate threshold must be > 0");
        if (!(node.data_requirement >= 0.0))
            throw std::invalid_argument("node " + std::to_string(k) +
                                        ": data requirement must be >= 0");
    }

    const UavParams& u = spec.uav;
    if (!(u.weight > 0.0 && u.air_density > 0.0 && u.rotor_radius > 0.0 &&
          u.rotor_disc_area > 0.0 && u.blade_angular_velocity > 0.0 && u.tip_speed > 0.0 &&
          u.rotor_solidity > 0.0 && u.fuselage_drag_ratio > 0.0 && u.mean_induced_speed > 0.0 &&
          u.profile_drag_coefficient > 0.0))
        throw std::invalid_argument("uav: physical constants must be positive");
    if (!(u.induced_power_correction >= 0.0 && u.vertical_power_coefficient >= 0.0))
        throw std::invalid_argument("uav: power coefficients must be >= 0");
    if (!(u.max_speed > 0.0 && u.max_acceleration_x > 0.0 && u.max_acceleration_y > 0.0 &&
          u.max_acceleration_z > 0.0))
        throw std::invalid_argument("uav: kinematic limits must be positive");

    const ChannelParams& c = spec.channel;
    if (!(c.bandwidth > 0.0)) throw std::invalid_argument("channel: bandwidth must be > 0");
    if (!(c.los_a > 0.0 && c.los_b > 0.0))
        throw std::invalid_argument("channel: sigmoid constants must be > 0");
    if (!(c.nlos_attenuation > 0.0 && c.nlos_attenuation < 1.0))
        throw std::invalid_argument("channel: nlos attenuation must be in (0, 1)");
    if (!(c.path_loss_exponent > 0.0))
        throw std::invalid_argument("channel: path loss exponent must be > 0");
    if (!(c.reference_snr > 0.0)) throw std::invalid_argument("channel: reference snr must be > 0");
    if (!(c.comm_power >= 0.0)) throw std::invalid_argument("channel: comm power must be >= 0");
}

} // namespace uavplan
