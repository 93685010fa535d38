#pragma once

#include <stdexcept>
#include <string>

namespace qcopies {

// Base for every error the library raises on bad input or numerical failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension or qubit-count mismatch.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Argument outside its mathematical domain (negative copies, h >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Allocation problem with no variance anywhere (all k_j = 0).
class DegenerateProblemError : public Error {
 public:
  using Error::Error;
};

// Relaxed allocation that fails the original bilinear constraint.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration: unknown keys, missing flags, unparsable lists.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcopies
