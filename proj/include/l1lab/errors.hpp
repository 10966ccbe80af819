#pragma once

#include <stdexcept>
#include <string>

namespace l1lab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A request would exceed a configured resource budget (memory, grid size).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An index or limit outside the data that is available.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the region where a routine is defined or validated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A search finished without finding what was asked for.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Rejected configuration or command-line input.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical self-check failed.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace l1lab
