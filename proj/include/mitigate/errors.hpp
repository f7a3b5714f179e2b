#pragma once

#include <stdexcept>
#include <string>

namespace mitigate {

// Error taxonomy shared by every module. All are recoverable at the harness
// boundary, which maps ConfigError to exit code 2 and the rest to 3.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

struct EmptySample : std::runtime_error {
    explicit EmptySample(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateRay : std::runtime_error {
    explicit DegenerateRay(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientAcceptance : std::runtime_error {
    explicit InsufficientAcceptance(const std::string& what) : std::runtime_error(what) {}
};

struct SingularSystem : std::runtime_error {
    explicit SingularSystem(const std::string& what) : std::runtime_error(what) {}
};

struct InadmissibleAttack : std::runtime_error {
    explicit InadmissibleAttack(const std::string& what) : std::runtime_error(what) {}
};

struct IOError : std::runtime_error {
    explicit IOError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mitigate
