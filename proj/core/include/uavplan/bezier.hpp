#pragma once

#include <Eigen/Core>

#include <vector>

namespace uavplan {

/// Bezier control polygon. The curve interpolates the first and last points;
/// interior points shape it. At least three points.
struct ControlPoints {
    std::vector<Eigen::Vector3d> points;

    int count() const { return static_cast<int>(points.size()); }
};

/// A trajectory sampled on the normalized time grid u_i = i / (n - 1).
struct SampledPath {
    std::vector<Eigen::Vector3d> positions; ///< n samples, meters
    double delta_tbar = 0.0;                ///< 1 / (n - 1)
    double mission_time = 0.0;              ///< T, seconds
};

/// Forward-difference kinematics of a sampled path. With n position samples
/// there are n - 1 velocities and n - 2 accelerations:
///   v_i = (p_{i+1} - p_i) / (T * delta_tbar)
///   a_i = (v_{i+1} - v_i) / (T * delta_tbar)
struct Kinematics {
    std::vector<Eigen::Vector3d> velocities;    ///< n - 1, m/s
    std::vector<double> speeds;                 ///< n - 1, |v_i|
    std::vector<Eigen::Vector3d> accelerations; ///< n - 2, m/s^2
    double delta_tbar = 0.0;
    double mission_time = 0.0;
};

/// Point on the curve at parameter u in [0, 1], by the de Casteljau
/// recurrence. Exact at the endpoints: u = 0 yields the first control point
/// and u = 1 the last, bit for bit. Throws std::invalid_argument when u is
/// outside [0, 1] or fewer than three control points are given.
Eigen::Vector3d bezier_point(const ControlPoints& cp, double u);

/// Samples the curve at n equally spaced parameters. Sample i equals
/// bezier_point(cp, i / (n - 1)) exactly. Requires n >= 3 and T > 0.
SampledPath sample_path(const ControlPoints& cp, int sample_count, double mission_time);

/// Forward-difference velocities, speeds and accelerations of a sampled path.
Kinematics kinematics(const SampledPath& path);

} // namespace uavplan
