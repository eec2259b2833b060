#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hazbands {

// Base class for all engine errors. The CLI maps subclasses onto exit codes
// (I/O = 1, configuration = 2, numerical = 3).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyData : Error {
  EmptyData() : Error("empty input data") {}
};

struct MalformedRow : Error {
  std::size_t row;
  MalformedRow(std::size_t row_, const std::string& detail)
      : Error("malformed row " + std::to_string(row_) + ": " + detail), row(row_) {}
};

struct DegenerateSample : Error {
  explicit DegenerateSample(const std::string& detail) : Error("degenerate sample: " + detail) {}
};

struct OutOfDomain : Error {
  explicit OutOfDomain(const std::string& detail) : Error("out of domain: " + detail) {}
};

struct IntegrandSingular : Error {
  explicit IntegrandSingular(const std::string& detail) : Error("singular integrand: " + detail) {}
};

struct NoFiniteMedian : Error {
  NoFiniteMedian() : Error("median survival lies beyond the horizon") {}
};

struct InvalidParameter : Error {
  explicit InvalidParameter(const std::string& detail) : Error("invalid parameter: " + detail) {}
};

struct InvalidConfig : Error {
  explicit InvalidConfig(const std::string& detail) : Error("invalid configuration: " + detail) {}
};

struct InsufficientDraws : Error {
  explicit InsufficientDraws(const std::string& detail) : Error("insufficient draws: " + detail) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& detail) : Error("domain error: " + detail) {}
};

struct NoEvents : Error {
  NoEvents() : Error("dataset contains no events") {}
};

struct BadShape : Error {
  explicit BadShape(const std::string& detail) : Error("bad shape: " + detail) {}
};

struct TooLarge : Error {
  explicit TooLarge(const std::string& detail) : Error("too large: " + detail) {}
};

}  // namespace hazbands
