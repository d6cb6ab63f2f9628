#pragma once

#include <stdexcept>
#include <string>

namespace gkc {

// Malformed graph data: broken involution, disconnected input, bad indices.
struct structural_error : std::runtime_error {
  explicit structural_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A move (edge contraction, hair removal) whose result would be unstable.
struct move_forbidden_error : std::runtime_error {
  explicit move_forbidden_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid user-facing parameters, e.g. (g,n) with 2g-2+n <= 0.
struct parameter_error : std::runtime_error {
  explicit parameter_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable or schema-violating input files (decoration data, cache records).
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Cache record failed its checksum.
struct checksum_error : std::runtime_error {
  explicit checksum_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal cross-check failed (d^2 != 0, oracle mismatch). Always fatal.
struct consistency_error : std::logic_error {
  explicit consistency_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace gkc
