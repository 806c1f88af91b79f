#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace polytree {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A document or value violates an invariant. Carries an optional path
/// ("nodes[2].next[0][1]") locating the first violation.
class ValidateError : public Error {
public:
  explicit ValidateError(const std::string& message, std::string path = {})
      : Error(path.empty() ? message : message + " (at " + path + ")"),
        path_(std::move(path)) {}

  const std::string& path() const { return path_; }

private:
  std::string path_;
};

/// An operation refused because the result would exceed the size budget.
/// Carries the exact closed-form count that triggered the refusal.
class BudgetError : public Error {
public:
  BudgetError(const std::string& context, std::string count, std::uint64_t limit)
      : Error(context + ": size " + count + " exceeds budget " + std::to_string(limit)),
        count_(std::move(count)),
        limit_(limit) {}

  const std::string& count() const { return count_; }
  std::uint64_t limit() const { return limit_; }

private:
  std::string count_;
  std::uint64_t limit_;
};

}  // namespace polytree
