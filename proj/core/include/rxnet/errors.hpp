#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rxnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class ParseErrorKind {
    Syntax,
    DuplicateSpecies,
    DuplicateReactionId,
    UndeclaredSpecies,
    ChargeUnbalanced,
    ElementUnbalanced,
    BadRate,
};

const char* to_string(ParseErrorKind kind);

/// Model/scenario text rejected. Carries the 1-based line and column of the
/// offending token so front ends can point at it.
class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, int line, int column, const std::string& msg)
        : Error(format(kind, line, column, msg)), kind_(kind), line_(line), column_(column) {}

    ParseErrorKind kind() const { return kind_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(ParseErrorKind kind, int line, int column, const std::string& msg);

    ParseErrorKind kind_;
    int line_;
    int column_;
};

/// Structural invariant violated on an already-parsed object.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Numerical failure during integration. Names the species and the step at
/// which the guard fired.
class SimulationError : public Error {
public:
    SimulationError(std::string species, std::uint64_t step, const std::string& msg)
        : Error(msg), species_(std::move(species)), step_(step) {}

    const std::string& species() const { return species_; }
    std::uint64_t step() const { return step_; }

private:
    std::string species_;
    std::uint64_t step_;
};

/// Bundled asset failed its integrity check.
class AssetError : public Error {
public:
    using Error::Error;
};

}  // namespace rxnet
