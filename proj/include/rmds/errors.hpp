#pragma once

#include <stdexcept>
#include <string>

namespace rmds {

/// Malformed input data (bad line in an edge list, bad cache header, ...).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Input violates a precondition (disconnected graph, nonpositive weight, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure (non-finite iterate, factorization breakdown, ...).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem / stream failure.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rmds
