#pragma once

#include "uavplan/bezier.hpp"
#include "uavplan/channel.hpp"
#include "uavplan/evo.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace uavplan {

/// Shortest text form that parses back to exactly the same double
/// (locale-independent; "inf" / "-inf" / "nan" for non-finite values).
std::string format_double(double value);

/// Hex-encoded SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// Writes a string to a file, replacing it atomically enough for our use
/// (truncate + write). LF line endings are the caller's responsibility.
void write_file(const std::filesystem::path& path, std::string_view content);

/// Reads a whole file as bytes. Throws std::runtime_error when unreadable.
std::string read_file(const std::filesystem::path& path);

/// trajectory.csv: one row per path sample with columns
///   t,x,y,z,vx,vy,vz,speed,ax,ay,az,rate_1,active_1,...,rate_K,active_K
/// Velocity columns are empty on the last row and acceleration columns on
/// the last two rows, matching the forward-difference rule.
std::string render_trajectory_csv(const SampledPath& path, const Kinematics& kin,
                                  const LinkTrace& trace);

/// history.csv: generation,best_feasible_objective,min_violation,feasible_count
std::string render_history_csv(std::span<const GenerationStats> history);

} // namespace uavplan
