#pragma once

#include "uavplan/bezier.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace uavplan {

/// A data-collection point on the ground. The z coordinate sits on the
/// terrain surface at (x, y).
struct GroundNode {
    Eigen::Vector3d position = Eigen::Vector3d::Zero(); ///< meters
    double data_requirement = 0.0;                      ///< bits to deliver
    double rate_threshold = 0.0;                        ///< bit/s; link counts only at or above this
};

/// Probabilistic air-to-ground channel parameters.
struct ChannelParams {
    double bandwidth = 0.0;          ///< Hz
    double los_a = 0.0;              ///< sigmoid offset, degrees
    double los_b = 0.0;              ///< sigmoid slope, 1/degree
    double nlos_attenuation = 0.0;   ///< kappa in (0, 1); floor of the regularized LoS probability
    double path_loss_exponent = 0.0; ///< alpha
    double reference_snr_db = 0.0;   ///< gamma_0 as configured, dB
    double reference_snr = 0.0;      ///< gamma_0, linear (10^(dB/10))
    double comm_power = 0.0;         ///< receiver-side power drawn per active link, W

    static double snr_db_to_linear(double db) noexcept;
};

/// Two points closer than this (meters) make the link geometry degenerate.
inline constexpr double kMinLinkDistance = 1e-6;

/// Elevation angle of q as seen from u, in degrees:
///   theta = (180 / pi) * asin((q_z - u_z) / |q - u|).
/// Throws DegenerateGeometryError when |q - u| < kMinLinkDistance.
double elevation_angle(const Eigen::Vector3d& q, const Eigen::Vector3d& u);

/// Line-of-sight probability 1 / (1 + a * exp(-b * (theta - a))),
/// theta in degrees.
double los_probability(double theta_deg, const ChannelParams& params) noexcept;

/// Expected achievable rate in bit/s between vehicle position q and node
/// position u:
///   p_hat = kappa + (1 - kappa) * P_los(theta)
///   rate  = B * log2(1 + gamma_0 * p_hat / d^alpha)
/// Throws DegenerateGeometryError when the points coincide.
double expected_rate(const Eigen::Vector3d& q, const Eigen::Vector3d& u,
                     const ChannelParams& params);

/// Per-node link history along a sampled path.
struct LinkTrace {
    Eigen::MatrixXd rates;                     ///< K x n, bit/s
    std::vector<std::vector<std::uint8_t>> active; ///< K x n, rate >= threshold
    std::vector<double> collected;             ///< K, delivered bits: T*dtbar*sum(active rates)
    double delta_tbar = 0.0;
    double mission_time = 0.0;
};

/// Evaluates the expected rate toward every node at every path sample and
/// accumulates delivered data with the rectangle rule over all n samples.
LinkTrace link_trace(const SampledPath& path, std::span<const GroundNode> nodes,
                     const ChannelParams& params);

/// Communication energy: comm_power is drawn for every (node, sample) pair
/// whose link is active, each weighted by T * delta_tbar.
double comm_energy(const LinkTrace& trace, double mission_time,
                   const ChannelParams& params) noexcept;

} // namespace uavplan
