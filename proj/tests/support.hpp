#pragma once

#include "uavplan/channel.hpp"
#include "uavplan/energy.hpp"
#include "uavplan/terrain.hpp"

#include <algorithm>
#include <cmath>

// Shared fixtures: the stock vehicle / channel / terrain constants (the same
// values default_scenario ships, duplicated here so the physics tests stand
// on their own) and a relative-error helper.
namespace testsupport {

inline double rel_err(double actual, double expected) {
    const double mag = std::max(std::fabs(actual), std::fabs(expected));
    if (mag == 0.0) return 0.0;
    return std::fabs(actual - expected) / mag;
}

inline uavplan::UavParams stock_uav() {
    uavplan::UavParams uav;
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
    const uavplan::HoverPowers hover = uavplan::derive_hover_powers(uav);
    uav.profile_power = hover.profile;
    uav.induced_power = hover.induced;
    uav.max_speed = 30.0;
    uav.max_acceleration_x = 2.0;
    uav.max_acceleration_y = 2.0;
    uav.max_acceleration_z = 2.0;
    return uav;
}

inline uavplan::ChannelParams stock_channel() {
    uavplan::ChannelParams ch;
    ch.bandwidth = 1.0e6;
    ch.los_a = 10.0;
    ch.los_b = 0.6;
    ch.nlos_attenuation = 0.2;
    ch.path_loss_exponent = 2.3;
    ch.reference_snr_db = 52.5;
    ch.reference_snr = uavplan::ChannelParams::snr_db_to_linear(52.5);
    ch.comm_power = 5.0;
    return ch;
}

inline uavplan::TerrainMap stock_terrain() {
    uavplan::TerrainMap map;
    map.bound_x = 800.0;
    map.bound_y = 800.0;
    map.bound_z = 122.0;
    map.bumps = {
        {150.0, 200.0, 500.0, 90.0, 90.0},
        {150.0, 600.0, 500.0, 90.0, 90.0},
        {150.0, 400.0, 200.0, 90.0, 90.0},
    };
    return map;
}

// Reference values computed independently with 50-digit arithmetic from the
// stock constants above, then rounded to the nearest double.
namespace oracle {
inline constexpr double kProfilePower = 79.85628;
inline constexpr double kInducedPower = 88.627937741082005;
inline constexpr double kHoverPower = 168.48421774108200;
inline constexpr double kPowerAt30 = 356.28395643471586;
inline constexpr double kPowerClimb5 = 225.78421774108200;
inline constexpr double kReferenceSnrLinear = 177827.94100389228;
inline constexpr double kRateOverhead100 = 2450706.0759624728;
inline constexpr double kRateOverheadHalf = 19740124.145582320;
inline constexpr double kPeakAltitude = 150.05679698315593;
inline constexpr double kOriginAltitude = 6.5479702780520188e-4;
} // namespace oracle

} // namespace testsupport
