#pragma once

#include <stdexcept>
#include <string>

namespace cpoly {

// Error taxonomy mirrors the CLI exit codes:
//   ImproperSceneError      -> 2
//   DegenerateGeometryError -> 3 (also generation exhaustion)
//   TheoryViolationError    -> 4 (a bound or oracle mismatch; a bug by definition)
class GeometryError : public std::runtime_error {
public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

class ImproperSceneError : public GeometryError {
public:
  explicit ImproperSceneError(const std::string& what) : GeometryError(what) {}
};

class DegenerateGeometryError : public GeometryError {
public:
  explicit DegenerateGeometryError(const std::string& what) : GeometryError(what) {}
};

class TheoryViolationError : public GeometryError {
public:
  explicit TheoryViolationError(const std::string& what) : GeometryError(what) {}
};

class GenerationExhaustedError : public GeometryError {
public:
  explicit GenerationExhaustedError(const std::string& what) : GeometryError(what) {}
};

}  // namespace cpoly
