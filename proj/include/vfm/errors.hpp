#pragma once

#include <stdexcept>
#include <string>

namespace vfm {

// Exit-code taxonomy used by the CLI: 0 pass, 1 acceptance failure,
// 2 configuration error, 3 numerical degeneracy.
enum class ExitCode : int { Pass = 0, AcceptanceFailure = 1, ConfigError = 2, Degeneracy = 3 };

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual ExitCode exitCode() const { return ExitCode::Degeneracy; }
};

struct CausalDegeneracy : Error {
    using Error::Error;
};

struct MixedCausality : Error {
    using Error::Error;
};

struct ArcLengthDrift : Error {
    using Error::Error;
};

struct FrenetUndefined : Error {
    using Error::Error;
};

struct CaseMismatch : Error {
    using Error::Error;
    ExitCode exitCode() const override { return ExitCode::ConfigError; }
};

struct GridTooSmall : Error {
    using Error::Error;
    ExitCode exitCode() const override { return ExitCode::ConfigError; }
};

struct ConstraintViolation : Error {
    using Error::Error;
    ExitCode exitCode() const override { return ExitCode::ConfigError; }
};

struct ConfigError : Error {
    using Error::Error;
    ExitCode exitCode() const override { return ExitCode::ConfigError; }
};

struct HyperbolicRange : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
    ExitCode exitCode() const override { return ExitCode::ConfigError; }
};

}  // namespace vfm
