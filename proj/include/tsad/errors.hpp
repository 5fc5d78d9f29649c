#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsad {

/// Base for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The input data itself is unusable (CLI exit code 2).
class InputError : public Error {
public:
    using Error::Error;
};

/// A parameter or configuration value is invalid (CLI exit code 3).
class ConfigError : public Error {
public:
    using Error::Error;
};

class MalformedRow : public InputError {
public:
    MalformedRow(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class EmptyInput : public InputError {
public:
    using InputError::InputError;
    EmptyInput() : InputError("no data rows survived parsing") {}
};

class OddSpan : public InputError {
public:
    using InputError::InputError;
};

class SeriesTooShort : public InputError {
public:
    using InputError::InputError;
};

class TooFewSamples : public InputError {
public:
    using InputError::InputError;
};

class TooFewRows : public InputError {
public:
    using InputError::InputError;
};

class ZeroVariance : public InputError {
public:
    using InputError::InputError;
};

class ZeroVarianceModel : public InputError {
public:
    using InputError::InputError;
    ZeroVarianceModel() : InputError("model has zero variance") {}
};

class LengthMismatch : public InputError {
public:
    using InputError::InputError;
};

class ConstantInput : public InputError {
public:
    using InputError::InputError;
};

class Undefined : public InputError {
public:
    using InputError::InputError;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

class DegenerateCluster : public InputError {
public:
    using InputError::InputError;
};

class EmptyJoin : public InputError {
public:
    EmptyJoin() : InputError("no timestamps align between the two series") {}
};

class EmptyRegion : public InputError {
public:
    using InputError::InputError;
};

class RateTooHigh : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class EmptyEnsemble : public ConfigError {
public:
    EmptyEnsemble() : ConfigError("ensemble needs at least one report") {}
};

class NonpositiveWeights : public ConfigError {
public:
    using ConfigError::ConfigError;
};

}  // namespace tsad
