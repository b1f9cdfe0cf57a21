#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dab {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A root or threshold search failed to bracket its target.
class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Gram determinant condition has no real root for the unknown norm.
class NoCompletionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A density bound of 1 or more carries no information about colorings.
class NoInformationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Consecutive distances are not spread apart far enough.
class SpacingError : public std::invalid_argument {
 public:
  SpacingError(const std::string& what, std::size_t index)
      : std::invalid_argument(what), index_(index) {}

  /// Zero-based index i such that d[i+1] / d[i] fails the ratio test.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Malformed certificate document or cut file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Condition that cannot happen for well-formed input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dab
