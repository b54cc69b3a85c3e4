#include "uavplan/bezier.hpp"

#include <stdexcept>

namespace uavplan {

namespace {

// One de Casteljau pass over a scratch copy of the control points.
// The (1 - u) * a + u * b blend is exact at u = 0 and u = 1.
Eigen::Vector3d de_casteljau(std::vector<Eigen::Vector3d>& scratch, double u) {
    const int m = static_cast<int>(scratch.size());
    for (int r = m - 1; r >= 1; --r)
        for (int i = 0; i < r; ++i)
            scratch[static_cast<std::size_t>(i)] =
                (1.0 - u) * scratch[static_cast<std::size_t>(i)] +
                u * scratch[static_cast<std::size_t>(i + 1)];
    return scratch[0];
}

} // namespace

Eigen::Vector3d bezier_point(const ControlPoints& cp, double u) {
    if (cp.count() < 3) throw std::invalid_argument("bezier_point: need at least 3 control points");
    if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("bezier_point: u outside [0, 1]");
    std::vector<Eigen::Vector3d> scratch = cp.points;
    return de_casteljau(scratch, u);
}

SampledPath sample_path(const ControlPoints& cp, int sample_count, double mission_time) {
    if (cp.count() < 3) throw std::invalid_argument("sample_path: need at least 3 control points");
    if (sample_count < 3) throw std::invalid_argument("sample_path: need at least 3 samples");
    if (!(mission_time > 0.0)) throw std::invalid_argument("sample_path: mission time must be > 0");

    SampledPath path;
    path.mission_time = mission_time;
    path.delta_tbar = 1.0 / static_cast<double>(sample_count - 1);
    path.positions.resize(static_cast<std::size_t>(sample_count));

    std::vector<Eigen::Vector3d> scratch(cp.points.size());
    for (int i = 0; i < sample_count; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(sample_count - 1);
        scratch.assign(cp.points.begin(), cp.points.end());
        path.positions[static_cast<std::size_t>(i)] = de_casteljau(scratch, u);
    }
    return path;
}

Kinematics kinematics(const SampledPath& path) {
    const auto n = path.positions.size();
    if (n < 3) throw std::invalid_argument("kinematics: need at least 3 position samples");
    if (!(path.mission_time > 0.0) || !(path.delta_tbar > 0.0))
        throw std::invalid_argument("kinematics: path has no valid time grid");

    const double dt = path.mission_time * path.delta_tbar;
    Kinematics kin;
    kin.delta_tbar = path.delta_tbar;
    kin.mission_time = path.mission_time;
    kin.velocities.resize(n - 1);
    kin.speeds.resize(n - 1);
    kin.accelerations.resize(n - 2);

    for (std::size_t i = 0; i + 1 < n; ++i) {
        kin.velocities[i] = (path.positions[i + 1] - path.positions[i]) / dt;
        kin.speeds[i] = kin.velocities[i].norm();
    }
    for (std::size_t i = 0; i + 2 < n; ++i)
        kin.accelerations[i] = (kin.velocities[i + 1] - kin.velocities[i]) / dt;
    return kin;
}

} // namespace uavplan
