#include "uavplan/channel.hpp"

#include "uavplan/errors.hpp"

#include <cmath>
#include <numbers>

namespace uavplan {

double ChannelParams::snr_db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

double elevation_angle(const Eigen::Vector3d& q, const Eigen::Vector3d& u) {
    const double d = (q - u).norm();
    if (d < kMinLinkDistance)
        throw DegenerateGeometryError("elevation_angle: points closer than the minimum link distance");
    // The ratio can exceed 1 in magnitude by a rounding error when the
    // points are vertically aligned.
    double s = (q.z() - u.z()) / d;
    if (s > 1.0) s = 1.0;
    if (s < -1.0) s = -1.0;
    return std::asin(s) * (180.0 / std::numbers::pi);
}

double los_probability(double theta_deg, const ChannelParams& params) noexcept {
    return 1.0 / (1.0 + params.los_a * std::exp(-params.los_b * (theta_deg - params.los_a)));
}

namespace {

double rate_from_geometry(double distance, double theta_deg, const ChannelParams& params) {
    const double p_hat =
        params.nlos_attenuation + (1.0 - params.nlos_attenuation) * los_probability(theta_deg, params);
    const double snr = params.reference_snr * p_hat / std::pow(distance, params.path_loss_exponent);
    return params.bandwidth * std::log2(1.0 + snr);
}

} // namespace

double expected_rate(const Eigen::Vector3d& q, const Eigen::Vector3d& u,
                     const ChannelParams& params) {
    const double d = (q - u).norm();
    if (d < kMinLinkDistance)
        throw DegenerateGeometryError("expected_rate: points closer than the minimum link distance");
    double s = (q.z() - u.z()) / d;
    if (s > 1.0) s = 1.0;
    if (s < -1.0) s = -1.0;
    const double theta = std::asin(s) * (180.0 / std::numbers::pi);
    return rate_from_geometry(d, theta, params);
}

LinkTrace link_trace(const SampledPath& path, std::span<const GroundNode> nodes,
                     const ChannelParams& params) {
    const auto n = path.positions.size();
    const auto k = nodes.size();

    LinkTrace trace;
    trace.delta_tbar = path.delta_tbar;
    trace.mission_time = path.mission_time;
    trace.rates.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n));
    trace.active.assign(k, std::vector<std::uint8_t>(n, 0));
    trace.collected.assign(k, 0.0);

    const double weight = path.mission_time * path.delta_tbar;
    for (std::size_t node = 0; node < k; ++node) {
        double active_rate_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double rate = expected_rate(path.positions[i], nodes[node].position, params);
            trace.rates(static_cast<Eigen::Index>(node), static_cast<Eigen::Index>(i)) = rate;
            if (rate >= nodes[node].rate_threshold) {
                trace.active[node][i] = 1;
                active_rate_sum += rate;
            }
        }
        trace.collected[node] = weight * active_rate_sum;
    }
    return trace;
}

double comm_energy(const LinkTrace& trace, double mission_time,
                   const ChannelParams& params) noexcept {
    long long active_samples = 0;
    for (const auto& row : trace.active)
        for (const std::uint8_t flag : row) active_samples += flag;
    return mission_time * trace.delta_tbar * params.comm_power * static_cast<double>(active_samples);
}

} // namespace uavplan
