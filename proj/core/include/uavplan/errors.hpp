#pragma once

#include <stdexcept>
#include <string>

namespace uavplan {

/// Thrown when two points that must be separated coincide (within the
/// configured minimum link distance), e.g. a path sample on top of a node.
class DegenerateGeometryError : public std::runtime_error {
public:
    explicit DegenerateGeometryError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a straight flight leg cannot be routed above the terrain
/// clearance surface, even after lifting it to the safe cruise altitude.
class TerrainConflictError : public std::runtime_error {
public:
    explicit TerrainConflictError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on malformed scenario input (syntax, unknown keys, bad values).
/// The message carries a path to the offending field.
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace uavplan
