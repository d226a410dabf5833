#pragma once

#include <stdexcept>
#include <string>

namespace deflab {

enum class ErrorKind {
    InvalidArgument,          // precondition violated by the caller
    UndefinedOperatingPoint,  // zero bus voltage for a constant-power load
    ResonanceSingularity,     // undamped generator driven at its natural frequency
    InfeasibleDispatch,       // no generator equilibrium for the requested power
    NonHermitian,
    VoltageCollapse,
    NonFiniteState,
    Schema,                   // malformed CSV input
    Config,                   // malformed scenario configuration
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` says what went wrong.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace deflab
