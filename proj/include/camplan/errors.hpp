#pragma once

#include <stdexcept>
#include <string>

namespace camplan {

/// Raised when input data (files, streams, persisted artifacts) is unusable:
/// bad headers, too many malformed rows, truncated binaries, version drift.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an optimization step fails in a way the caller cannot fix by
/// changing inputs locally (e.g. an LP that should be feasible is not).
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace camplan
