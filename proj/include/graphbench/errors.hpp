#pragma once

#include <stdexcept>
#include <string>

namespace graphbench {

// Base class for every failure the library raises on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Unknown table name.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Creating or renaming onto a name that already exists.
class NameConflictError : public Error {
 public:
  using Error::Error;
};

// Bad iterator configuration: priority clash, unknown iterator name,
// inverted ranges, or an op that violates its algebraic contract.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Value bytes that do not parse as a number, or malformed input records.
class DataFormatError : public Error {
 public:
  using Error::Error;
};

// Referenced side data is missing or nonsensical, e.g. a vertex without a
// degree entry during normalization.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Two updates landed on the same key in a table that has no combiner to
// resolve them, where the caller asked for collision detection.
class CollisionError : public Error {
 public:
  using Error::Error;
};

// A configured resource cap was exceeded, e.g. a buffered row grew past the
// per-row entry limit during a row-aligned merge.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Caller-supplied parameter out of range (k < 3, bad generator scale, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input table violates a structural precondition, e.g. a weighted or
// asymmetric adjacency matrix handed to an algorithm that needs an
// unweighted undirected graph.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A stream produced keys out of ascending order.
class StreamOrderError : public Error {
 public:
  using Error::Error;
};

// File could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace graphbench
