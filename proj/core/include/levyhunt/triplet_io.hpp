#pragma once

#include <string>
#include <variant>

#include "levyhunt/triplet.hpp"

namespace levyhunt {

// File form of the stable exponent-only family; kept symbolic so specs
// round-trip through serialization.
struct StableSpec {
    int n = 1;
    double alpha = 1.0;
    double scale = 1.0;

    ExponentOnly make() const { return stable_exponent(n, alpha, scale); }
};

using ProcessSpec = std::variant<LevyTriplet, StableSpec>;

// Parse a process specification document (see docs/formats.md). Throws
// ParseError naming the offending field, or the position for syntax errors.
ProcessSpec parse_process_spec(const std::string& text);
ProcessSpec load_process_spec(const std::string& path);

std::string serialize_triplet(const LevyTriplet& t);
std::string serialize_process_spec(const ProcessSpec& spec);

}  // namespace levyhunt
