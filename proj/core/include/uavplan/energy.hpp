#pragma once

#include "uavplan/bezier.hpp"

namespace uavplan {

/// Rotary-wing vehicle constants. SI units throughout.
struct UavParams {
    double weight = 0.0;                     ///< W, aircraft weight in Newton
    double air_density = 0.0;                ///< rho, kg/m^3
    double rotor_radius = 0.0;               ///< zeta, m
    double rotor_disc_area = 0.0;            ///< A, m^2
    double blade_angular_velocity = 0.0;     ///< Omega, rad/s
    double tip_speed = 0.0;                  ///< U_tip, m/s
    double rotor_solidity = 0.0;             ///< s
    double fuselage_drag_ratio = 0.0;        ///< d_0
    double induced_power_correction = 0.0;   ///< l, incremental factor on induced power
    double mean_induced_speed = 0.0;         ///< v_0, m/s in hover
    double profile_drag_coefficient = 0.0;   ///< delta
    double vertical_power_coefficient = 0.0; ///< P_2, W per (m/s) of climb or descent

    /// Derived hover powers; filled by derive_hover_powers / scenario loading.
    double profile_power = 0.0; ///< P_0 = (delta / 8) * rho * s * A * Omega^3 * zeta^3
    double induced_power = 0.0; ///< P_1 = (1 + l) * W^(3/2) / sqrt(2 * rho * A)

    double max_speed = 0.0;          ///< v_max, m/s
    double max_acceleration_x = 0.0; ///< m/s^2
    double max_acceleration_y = 0.0;
    double max_acceleration_z = 0.0;
};

struct HoverPowers {
    double profile = 0.0; ///< P_0, W
    double induced = 0.0; ///< P_1, W
};

/// Closed-form hover power components from the physical constants.
HoverPowers derive_hover_powers(const UavParams& uav) noexcept;

/// Instantaneous propulsion power (W) at horizontal speed v_xy and vertical
/// speed v_z, as the sum of four terms:
///   parasite   0.5 * d_0 * rho * s * A * v_xy^3
///   profile    P_0 * (1 + 3 v_xy^2 / U_tip^2)
///   induced    P_1 * sqrt(sqrt(1 + r^2) - r),  r = v_xy^2 / (2 v_0^2)
///   vertical   P_2 * |v_z|
/// Requires profile_power / induced_power to be populated.
double propulsion_power(double horizontal_speed, double vertical_speed,
                        const UavParams& uav) noexcept;

/// Flight energy of a sampled trajectory (J):
///   E = T * delta_tbar * sum_i P(v_xy_i, v_z_i)
/// over the n - 1 forward-difference velocity samples.
double flight_energy(const Kinematics& kin, double mission_time, const UavParams& uav) noexcept;

} // namespace uavplan
