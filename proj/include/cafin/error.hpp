#pragma once

#include <stdexcept>
#include <string>

namespace cafin {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input files.
struct ParseError : Error {
  using Error::Error;
};

// Inputs that parse but disagree with each other (e.g. edge ids beyond
// the feature matrix).
struct ConsistencyError : Error {
  using Error::Error;
};

struct ArgumentError : Error {
  using Error::Error;
};

// Resource limits: n^2 tables over budget, negative sampling exhausted.
struct CapacityError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct DegenerateDataError : Error {
  using Error::Error;
};

struct UndefinedMetricError : Error {
  using Error::Error;
};

struct TrainingError : Error {
  using Error::Error;
};

}  // namespace cafin
