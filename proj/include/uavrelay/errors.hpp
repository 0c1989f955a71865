#pragma once

#include <stdexcept>
#include <string>

namespace uavrelay {

// Argument outside the mathematical domain of a function (negative SNR,
// non-finite input, non-positive distance).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Placement or power outside the feasible region of a scenario.
class BoundsError : public std::out_of_range {
public:
    explicit BoundsError(const std::string& what) : std::out_of_range(what) {}
};

// Structurally invalid scenario, environment or grid description.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace uavrelay
