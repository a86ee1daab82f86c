#pragma once

#include <stdexcept>
#include <string>

namespace qbgk {

/// Argument outside the mathematical domain of an operation
/// (e.g. Bose integrals below x = 0).
class DomainError : public std::domain_error {
  public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Requested target value outside the achievable range of a monotone map.
class RangeError : public std::range_error {
  public:
    explicit RangeError(const std::string& what) : std::range_error(what) {}
};

/// A quadrature or iteration failed to reach the requested accuracy.
class AccuracyError : public std::runtime_error {
  public:
    explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative solver exhausted its iteration budget.
class ConvergenceError : public std::runtime_error {
  public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Moment data violates the existence condition for equilibrium coefficients.
/// Carries enough context to identify the failing cell in a simulation.
class FeasibilityError : public std::runtime_error {
  public:
    explicit FeasibilityError(std::string reason, int species = -1, int cell = -1)
        : std::runtime_error(format(reason, species, cell)),
          reason_(std::move(reason)),
          species_(species),
          cell_(cell) {}

    const std::string& reason() const noexcept { return reason_; }
    int species() const noexcept { return species_; }
    int cell() const noexcept { return cell_; }

    FeasibilityError with_context(int species, int cell) const {
        return FeasibilityError(reason_, species, cell);
    }

  private:
    static std::string format(const std::string& reason, int species, int cell) {
        std::string s = reason;
        if (species >= 0) s += " [species " + std::to_string(species + 1) + "]";
        if (cell >= 0) s += " [cell " + std::to_string(cell) + "]";
        return s;
    }

    std::string reason_;
    int species_;
    int cell_;
};

/// Malformed configuration or I/O failure.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qbgk
