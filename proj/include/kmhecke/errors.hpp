#pragma once

#include <stdexcept>
#include <string>

namespace kmh {

// Domain failure carrying a stable machine-readable name (e.g. "DiagonalNotTwo").
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

// A caller-supplied enumeration cap was hit before the computation finished.
class BudgetExceeded : public DomainError {
 public:
  BudgetExceeded(const std::string& what, long long limit)
      : DomainError("BudgetExceeded", what + " (limit " + std::to_string(limit) + ")"),
        limit_(limit) {}
  long long limit() const noexcept { return limit_; }

 private:
  long long limit_;
};

}  // namespace kmh
