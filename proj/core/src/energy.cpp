#include "uavplan/energy.hpp"

#include <cmath>

namespace uavplan {

HoverPowers derive_hover_powers(const UavParams& uav) noexcept {
    HoverPowers p;
    const double omega3 = uav.blade_angular_velocity * uav.blade_angular_velocity *
                          uav.blade_angular_velocity;
    const double radius3 = uav.rotor_radius * uav.rotor_radius * uav.rotor_radius;
    p.profile = uav.profile_drag_coefficient / 8.0 * uav.air_density * uav.rotor_solidity *
                uav.rotor_disc_area * omega3 * radius3;
    p.induced = (1.0 + uav.induced_power_correction) * std::pow(uav.weight, 1.5) /
                std::sqrt(2.0 * uav.air_density * uav.rotor_disc_area);
    return p;
}

double propulsion_power(double horizontal_speed, double vertical_speed,
                        const UavParams& uav) noexcept {
    const double v2 = horizontal_speed * horizontal_speed;
    const double parasite = 0.5 * uav.fuselage_drag_ratio * uav.air_density * uav.rotor_solidity *
                            uav.rotor_disc_area * v2 * horizontal_speed;
    const double profile =
        uav.profile_power * (1.0 + 3.0 * v2 / (uav.tip_speed * uav.tip_speed));
    // sqrt(1 + r^2) - r evaluated as 1 / (sqrt(1 + r^2) + r): stays positive
    // with no cancellation even when the speed is far above the hover
    // induced speed.
    const double r = v2 / (2.0 * uav.mean_induced_speed * uav.mean_induced_speed);
    const double induced = uav.induced_power * std::sqrt(1.0 / (std::sqrt(1.0 + r * r) + r));
    const double vertical = uav.vertical_power_coefficient * std::abs(vertical_speed);
    return parasite + profile + induced + vertical;
}

double flight_energy(const Kinematics& kin, double mission_time, const UavParams& uav) noexcept {
    double power_sum = 0.0;
    for (const Eigen::Vector3d& v : kin.velocities) {
        const double horizontal = std::sqrt(v.x() * v.x() + v.y() * v.y());
        power_sum += propulsion_power(horizontal, v.z(), uav);
    }
    return mission_time * kin.delta_tbar * power_sum;
}

} // namespace uavplan
