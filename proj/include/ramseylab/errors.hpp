#pragma once

#include <stdexcept>
#include <string>

namespace ramseylab {

// Base for all library errors. CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: bad partition literal, broken category table, invalid
// structure relations, functor law violation. CLI exit code 2.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// A sweep would exceed a configured budget (Bell count, hom-set size,
// universe bound). CLI exit code 3.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& msg) : Error(msg) {}
};

}  // namespace ramseylab
