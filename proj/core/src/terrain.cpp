#include "uavplan/terrain.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uavplan {

void validate(const TerrainMap& map) {
    if (!(map.bound_x > 0.0) || !(map.bound_y > 0.0) || !(map.bound_z > 0.0))
        throw std::invalid_argument("terrain bounds must be positive");
    for (std::size_t i = 0; i < map.bumps.size(); ++i) {
        const GaussianBump& b = map.bumps[i];
        if (!(b.amplitude >= 0.0))
            throw std::invalid_argument("bump " + std::to_string(i) + ": amplitude must be >= 0");
        if (!(b.sigma_x > 0.0) || !(b.sigma_y > 0.0))
            throw std::invalid_argument("bump " + std::to_string(i) + ": sigmas must be > 0");
    }
}

double altitude(const TerrainMap& map, double x, double y) noexcept {
    double sum = 0.0;
    for (const GaussianBump& b : map.bumps) {
        const double dx = x - b.center_x;
        const double dy = y - b.center_y;
        const double exposure = dx * dx / (2.0 * b.sigma_x * b.sigma_x) +
                                dy * dy / (2.0 * b.sigma_y * b.sigma_y);
        sum += b.amplitude * std::exp(-exposure);
    }
    return sum;
}

std::vector<double> altitude_batch(const TerrainMap& map, std::span<const double> xs,
                                   std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("altitude_batch: coordinate arrays differ in length");
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = altitude(map, xs[i], ys[i]);
    return out;
}

} // namespace uavplan
