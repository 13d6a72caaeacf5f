#pragma once

#include <stdexcept>
#include <string>

namespace repcut {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input that violates a domain invariant. `field` is a dotted path such as
// "beliefs.pi" so that config loaders can report where the problem is.
class InvalidArgument : public Error {
public:
    InvalidArgument(std::string field, const std::string& message)
        : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class ComputationError : public Error {
public:
    using Error::Error;
};

enum class CornerKind { interior, all_risky, all_safe, indeterminate };

const char* to_string(CornerKind kind) noexcept;

class NoInteriorEquilibrium : public ComputationError {
public:
    explicit NoInteriorEquilibrium(CornerKind kind)
        : ComputationError(std::string("no interior equilibrium (") + to_string(kind) + ")"), kind_(kind) {}

    CornerKind kind() const noexcept { return kind_; }

private:
    CornerKind kind_;
};

class NonConvergence : public ComputationError {
public:
    using ComputationError::ComputationError;
};

class SensitivityAtCorner : public ComputationError {
public:
    using ComputationError::ComputationError;
};

class DegenerateSuccessProb : public ComputationError {
public:
    using ComputationError::ComputationError;
};

namespace detail {

inline void require(bool ok, const char* field, const std::string& message) {
    if (!ok) throw InvalidArgument(field, message);
}

}  // namespace detail

}  // namespace repcut
