#include "uavplan/baseline.hpp"

#include "uavplan/channel.hpp"
#include "uavplan/energy.hpp"
#include "uavplan/errors.hpp"
#include "uavplan/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uavplan {

namespace {

// Leg clearance checks sample the straight line at roughly this spacing.
constexpr double kCheckSpacing = 1.0;

bool line_is_clear(const TerrainMap& terrain, const Eigen::Vector3d& from,
                   const Eigen::Vector3d& to, double clearance) {
    const double length = (to - from).norm();
    const auto intervals = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(length / kCheckSpacing)));
    for (std::int64_t j = 0; j <= intervals; ++j) {
        const double u = static_cast<double>(j) / static_cast<double>(intervals);
        const Eigen::Vector3d p = from + u * (to - from);
        if (p.z() < altitude(terrain, p.x(), p.y()) + clearance) return false;
    }
    return true;
}

PlanSegment make_segment(const Eigen::Vector3d& from, const Eigen::Vector3d& to,
                         const UavParams& uav) {
    PlanSegment seg;
    seg.from = from;
    seg.to = to;
    const Eigen::Vector3d d = to - from;
    const double length = d.norm();
    seg.duration = length / uav.max_speed;
    seg.horizontal_speed = uav.max_speed * std::hypot(d.x(), d.y()) / length;
    seg.vertical_speed = uav.max_speed * d.z() / length;
    seg.energy = seg.duration * propulsion_power(seg.horizontal_speed, seg.vertical_speed, uav);
    return seg;
}

/// Routes one leg: straight if the line clears the terrain margin, otherwise
/// climb to the cruise altitude, cruise, and descend. Empty result means the
/// leg cannot be routed even at the cruise altitude.
std::optional<std::vector<PlanSegment>> route_leg(const MissionSpec& spec,
                                                  const Eigen::Vector3d& from,
                                                  const Eigen::Vector3d& to,
                                                  double cruise_altitude) {
    std::vector<PlanSegment> segments;
    if ((to - from).norm() == 0.0) return segments;

    if (line_is_clear(spec.terrain, from, to, spec.clearance)) {
        segments.push_back(make_segment(from, to, spec.uav));
        return segments;
    }

    const Eigen::Vector3d up(from.x(), from.y(), cruise_altitude);
    const Eigen::Vector3d down(to.x(), to.y(), cruise_altitude);
    if (!line_is_clear(spec.terrain, from, up, spec.clearance) ||
        !line_is_clear(spec.terrain, up, down, spec.clearance) ||
        !line_is_clear(spec.terrain, down, to, spec.clearance))
        return std::nullopt;

    for (const auto& [a, b] : {std::pair{from, up}, std::pair{up, down}, std::pair{down, to}})
        if ((b - a).norm() > 0.0) segments.push_back(make_segment(a, b, spec.uav));
    return segments;
}

double leg_energy(const std::vector<PlanSegment>& segments) {
    double total = 0.0;
    for (const PlanSegment& seg : segments) total += seg.energy;
    return total;
}

std::vector<HoverStation> build_stations(const MissionSpec& spec) {
    const double hover_power = propulsion_power(0.0, 0.0, spec.uav);
    std::vector<HoverStation> stations;
    stations.reserve(spec.nodes.size());
    for (std::size_t k = 0; k < spec.nodes.size(); ++k) {
        const GroundNode& node = spec.nodes[k];
        HoverStation st;
        st.node_index = static_cast<int>(k);
        const double floor_z =
            altitude(spec.terrain, node.position.x(), node.position.y()) + spec.clearance;
        if (floor_z > spec.terrain.bound_z)
            throw TerrainConflictError("hover station for node " + std::to_string(k) +
                                       " would sit above the flight ceiling");
        st.position = Eigen::Vector3d(node.position.x(), node.position.y(), floor_z);
        st.rate = expected_rate(st.position, node.position, spec.channel);
        if (st.rate < node.rate_threshold)
            throw std::invalid_argument("hover station for node " + std::to_string(k) +
                                        " cannot reach the node's rate threshold");
        st.duration = node.data_requirement / st.rate;
        st.flight_energy = hover_power * st.duration;
        st.comm_energy = spec.channel.comm_power * st.duration;
        stations.push_back(st);
    }
    return stations;
}

std::vector<int> nearest_neighbor_order(const MissionSpec& spec,
                                        const std::vector<HoverStation>& stations,
                                        double cruise_altitude) {
    std::vector<int> order;
    std::vector<char> used(stations.size(), 0);
    Eigen::Vector3d current = spec.start;
    for (std::size_t step = 0; step < stations.size(); ++step) {
        int pick = -1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < stations.size(); ++k) {
            if (used[k]) continue;
            const double dist = (stations[k].position - current).norm();
            if (dist >= best) continue;
            if (!route_leg(spec, current, stations[k].position, cruise_altitude)) continue;
            best = dist;
            pick = static_cast<int>(k);
        }
        if (pick < 0)
            throw TerrainConflictError(
                "no remaining hover station is reachable from the current position");
        used[static_cast<std::size_t>(pick)] = 1;
        order.push_back(pick);
        current = stations[static_cast<std::size_t>(pick)].position;
    }
    return order;
}

/// Total leg energy of one complete order, or nothing if some leg is
/// unroutable.
std::optional<double> order_energy(const MissionSpec& spec,
                                   const std::vector<HoverStation>& stations,
                                   const std::vector<int>& order, double cruise_altitude) {
    double total = 0.0;
    Eigen::Vector3d current = spec.start;
    for (int k : order) {
        const auto segs = route_leg(spec, current, stations[static_cast<std::size_t>(k)].position,
                                    cruise_altitude);
        if (!segs) return std::nullopt;
        total += leg_energy(*segs);
        current = stations[static_cast<std::size_t>(k)].position;
    }
    const auto segs = route_leg(spec, current, spec.end, cruise_altitude);
    if (!segs) return std::nullopt;
    total += leg_energy(*segs);
    return total;
}

std::vector<int> exhaustive_order(const MissionSpec& spec,
                                  const std::vector<HoverStation>& stations,
                                  double cruise_altitude) {
    if (stations.size() > 8)
        throw std::invalid_argument("exhaustive visit ordering supports at most 8 nodes");
    std::vector<int> order(stations.size());
    std::iota(order.begin(), order.end(), 0);

    std::vector<int> best_order;
    double best_energy = std::numeric_limits<double>::infinity();
    do {
        const auto energy = order_energy(spec, stations, order, cruise_altitude);
        if (energy && *energy < best_energy) {
            best_energy = *energy;
            best_order = order;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    if (best_order.empty() && !stations.empty())
        throw TerrainConflictError("no node ordering yields a fully routable mission");
    return best_order;
}

} // namespace

HoverPlan plan_fly_hover_fly(const MissionSpec& spec, const BaselineConfig& cfg) {
    validate(spec);
    const double cruise_altitude =
        cfg.safe_altitude > 0.0 ? cfg.safe_altitude : spec.terrain.bound_z;
    if (cruise_altitude > spec.terrain.bound_z)
        throw std::invalid_argument("baseline: cruise altitude exceeds the flight ceiling");

    const std::vector<HoverStation> stations = build_stations(spec);
    const std::vector<int> order = cfg.visit_order == BaselineConfig::VisitOrder::Exhaustive
                                       ? exhaustive_order(spec, stations, cruise_altitude)
                                       : nearest_neighbor_order(spec, stations, cruise_altitude);

    HoverPlan plan;
    plan.visit_order = order;
    Eigen::Vector3d current = spec.start;
    for (int k : order) {
        const HoverStation& st = stations[static_cast<std::size_t>(k)];
        auto segs = route_leg(spec, current, st.position, cruise_altitude);
        if (!segs)
            throw TerrainConflictError("leg to node " + std::to_string(k) +
                                       " cannot be routed at the cruise altitude");
        plan.segments.insert(plan.segments.end(), segs->begin(), segs->end());
        plan.stations.push_back(st);
        current = st.position;
    }
    auto segs = route_leg(spec, current, spec.end, cruise_altitude);
    if (!segs)
        throw TerrainConflictError("final leg cannot be routed at the cruise altitude");
    plan.segments.insert(plan.segments.end(), segs->begin(), segs->end());

    for (const PlanSegment& seg : plan.segments) {
        plan.flight_energy += seg.energy;
        plan.mission_time += seg.duration;
    }
    for (const HoverStation& st : plan.stations) {
        plan.flight_energy += st.flight_energy;
        plan.comm_energy += st.comm_energy;
        plan.mission_time += st.duration;
    }
    plan.within_time_limit = plan.mission_time <= spec.max_mission_time;
    return plan;
}

TrajectoryEvaluation evaluate_plan(const HoverPlan& plan, const MissionSpec& spec) {
    TrajectoryEvaluation eval;
    eval.flight_energy = plan.flight_energy;
    eval.comm_energy = plan.comm_energy;
    eval.objective = plan.flight_energy + plan.comm_energy;
    eval.mission_time = plan.mission_time;
    eval.collected.assign(spec.nodes.size(), 0.0);
    for (const HoverStation& st : plan.stations)
        eval.collected[static_cast<std::size_t>(st.node_index)] =
            spec.nodes[static_cast<std::size_t>(st.node_index)].data_requirement;
    eval.violations = {};
    eval.total_violation = 0.0;
    eval.feasible = plan.within_time_limit;
    return eval;
}

SampledPath sample_plan(const HoverPlan& plan, int sample_count) {
    if (sample_count < 2) throw std::invalid_argument("sample_plan: need at least 2 samples");
    if (plan.segments.empty() && plan.stations.empty())
        throw std::invalid_argument("sample_plan: empty plan");

    // Timeline events in flight order; a hover is a zero-motion event after
    // the segment that arrives at its station.
    struct Event {
        Eigen::Vector3d from;
        Eigen::Vector3d to;
        double duration;
    };
    std::vector<Event> events;
    std::size_t next_station = 0;
    for (const PlanSegment& seg : plan.segments) {
        events.push_back({seg.from, seg.to, seg.duration});
        if (next_station < plan.stations.size() &&
            seg.to == plan.stations[next_station].position) {
            const HoverStation& st = plan.stations[next_station];
            events.push_back({st.position, st.position, st.duration});
            ++next_station;
        }
    }
    if (events.empty()) {
        const HoverStation& st = plan.stations.front();
        events.push_back({st.position, st.position, st.duration});
    }

    std::vector<double> ends(events.size());
    double total = 0.0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        total += events[i].duration;
        ends[i] = total;
    }

    SampledPath path;
    path.mission_time = plan.mission_time;
    path.delta_tbar = 1.0 / static_cast<double>(sample_count - 1);
    path.positions.reserve(static_cast<std::size_t>(sample_count));
    for (int i = 0; i < sample_count; ++i) {
        const double t = total * static_cast<double>(i) / static_cast<double>(sample_count - 1);
        const auto it = std::lower_bound(ends.begin(), ends.end(), t);
        const std::size_t idx = it == ends.end() ? events.size() - 1
                                                 : static_cast<std::size_t>(it - ends.begin());
        const Event& ev = events[idx];
        if (ev.duration == 0.0) {
            path.positions.push_back(ev.to);
            continue;
        }
        const double start_time = ends[idx] - ev.duration;
        const double u = std::clamp((t - start_time) / ev.duration, 0.0, 1.0);
        path.positions.push_back(ev.from + u * (ev.to - ev.from));
    }
    return path;
}

} // namespace uavplan
