#pragma once

#include <span>
#include <vector>

namespace uavplan {

/// One anisotropic Gaussian hill. All lengths in meters.
struct GaussianBump {
    double amplitude = 0.0;
    double center_x = 0.0;
    double center_y = 0.0;
    double sigma_x = 1.0;
    double sigma_y = 1.0;
};

/// Synthetic terrain: a sum of Gaussian bumps over the rectangular world
/// [0, bound_x] x [0, bound_y] with flight ceiling bound_z. The surface is
/// defined on all of R^2; the bounds only constrain where the vehicle may fly.
struct TerrainMap {
    std::vector<GaussianBump> bumps;
    double bound_x = 0.0;
    double bound_y = 0.0;
    double bound_z = 0.0;
};

/// Throws std::invalid_argument unless amplitudes are >= 0, sigmas > 0 and
/// bounds > 0.
void validate(const TerrainMap& map);

/// Ground altitude at (x, y): sum of all bump contributions, no clamping.
double altitude(const TerrainMap& map, double x, double y) noexcept;

/// Element-wise altitude over equally sized coordinate arrays. Bit-identical
/// to calling altitude() per point. Throws std::invalid_argument on length
/// mismatch.
std::vector<double> altitude_batch(const TerrainMap& map, std::span<const double> xs,
                                   std::span<const double> ys);

} // namespace uavplan
