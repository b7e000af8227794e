#pragma once

#include <stdexcept>
#include <string>

namespace sdual {

/// Invalid input or a request outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// An internal consistency check failed (corrupt data, numeric breakdown).
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured size or memory budget would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sdual
