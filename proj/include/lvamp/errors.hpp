#pragma once

#include <stdexcept>
#include <string>

namespace lvamp {

// Invalid parameters or arguments outside the mathematical domain of an
// operation (bad dimensions, rho outside [-1,1], kappa below threshold, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionError : public DomainError {
public:
    explicit DimensionError(const std::string& msg) : DomainError(msg) {}
};

// Numerical failure at runtime: divergence, non-finite intermediates,
// iteration caps, ray termination.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
    NumericalError(const std::string& msg, long iteration)
        : std::runtime_error(msg + " (iteration " + std::to_string(iteration) + ")"),
          iteration_(iteration) {}

    long iteration() const { return iteration_; }

private:
    long iteration_ = -1;
};

}  // namespace lvamp
