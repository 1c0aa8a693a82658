#pragma once

#include <stdexcept>
#include <string>

namespace relaykit {

struct DegenerateChannel : std::runtime_error {
  explicit DegenerateChannel(const std::string& what) : std::runtime_error(what) {}
};

struct SingularModel : std::runtime_error {
  explicit SingularModel(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidR0 : std::runtime_error {
  explicit InvalidR0(const std::string& what) : std::runtime_error(what) {}
};

struct WynerZivInfeasible : std::runtime_error {
  explicit WynerZivInfeasible(const std::string& what) : std::runtime_error(what) {}
};

struct RegimeViolation : std::runtime_error {
  explicit RegimeViolation(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyRegion : std::runtime_error {
  explicit EmptyRegion(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct SearchBudgetExceeded : std::runtime_error {
  explicit SearchBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace relaykit
