#pragma once

#include <stdexcept>
#include <string>

namespace afflie {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Mismatched rings, hosts, or shapes.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inversion requested for a non-unit element.
class NotAUnitError : public Error {
 public:
  using Error::Error;
};

/// Operation is undefined for the given structure (e.g. enumerating an
/// infinite ring).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Heap folds require odd arity.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// An enumeration outgrew its tuple budget. Never a silent pass.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::uint64_t budget)
      : Error(what), budget(budget) {}
  std::uint64_t budget;
};

/// A theorem-backed certification failed. Lawful inputs make this
/// unreachable, so seeing it means the implementation is wrong, not the
/// caller.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance document.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, const std::string& location)
      : Error(location.empty() ? what : what + " (at " + location + ")"),
        location(location) {}
  std::string location;
};

}  // namespace afflie
