#pragma once

#include <stdexcept>
#include <string>

namespace isav {

/// Bad input: grid sizes, parameters, config files.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Failure while advancing a scheme (non-positive bulk energy, energy law
/// violation when asserted, non-finite field).
class SchemeError : public std::runtime_error {
public:
    explicit SchemeError(const std::string& what, long step = -1)
        : std::runtime_error(what), step_(step) {}

    long step() const noexcept { return step_; }
    void set_step(long step) noexcept { step_ = step; }

private:
    long step_;
};

/// 𝓕[φ] ≤ 0, so r[φ] = √𝓕[φ] is undefined.
class NonPositiveEnergy : public SchemeError {
public:
    using SchemeError::SchemeError;
};

}  // namespace isav
