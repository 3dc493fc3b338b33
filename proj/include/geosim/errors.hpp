#pragma once

#include <stdexcept>
#include <string>

namespace geosim {

// Thrown by line_through when the two defining points coincide.
struct DegenerateLine : std::invalid_argument {
    explicit DegenerateLine(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown by sector predicates when S, P, B are collinear or otherwise
// cannot bound a proper sector.
struct DegenerateSector : std::invalid_argument {
    explicit DegenerateSector(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown on out-of-range node ids.
struct UnknownNode : std::out_of_range {
    explicit UnknownNode(const std::string& what) : std::out_of_range(what) {}
};

// Thrown when the topology generator exhausts its rejection budget.
struct GenerationFailed : std::runtime_error {
    explicit GenerationFailed(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed config/serialized input. The message names the field.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace geosim
