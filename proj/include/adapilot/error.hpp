#pragma once

#include <stdexcept>
#include <string>

namespace adapilot {

// Base class for all simulator errors.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : SimError {
    using SimError::SimError;
};

struct LayoutInvalidError : SimError {
    using SimError::SimError;
};

struct InsufficientBitsError : SimError {
    using SimError::SimError;
};

struct LengthMismatchError : SimError {
    using SimError::SimError;
};

struct EmptyPilotsError : SimError {
    using SimError::SimError;
};

struct ZeroPilotSymbolError : SimError {
    using SimError::SimError;
};

struct NonPositiveSymbolTimeError : SimError {
    using SimError::SimError;
};

struct ZeroEnergyError : SimError {
    using SimError::SimError;
};

struct IndexOutOfRangeError : SimError {
    using SimError::SimError;
};

struct IoError : SimError {
    using SimError::SimError;
};

}  // namespace adapilot
