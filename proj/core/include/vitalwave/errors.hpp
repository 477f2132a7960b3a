#pragma once

#include <stdexcept>
#include <string>

namespace vitalwave {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or parameter value (bad frequency, out-of-band rate, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A signal carried the wrong unit for the requested operation.
class UnitMismatchError : public Error {
public:
    using Error::Error;
};

/// Malformed file contents: bad magic, truncated payload, broken fixture.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure (unreadable input, unwritable output directory).
class IoError : public Error {
public:
    using Error::Error;
};

/// Input data that cannot be processed: NaN samples, record too short,
/// profile shorter than the detector window, weak range bin.
class DataError : public Error {
public:
    using Error::Error;
};

/// A processing stage produced a signal it cannot continue with
/// (all-zero estimate, zero weights, empty fusion stream). Carries the
/// stage name so the CLI can report where the pipeline died.
class DegenerateSignalError : public Error {
public:
    DegenerateSignalError(std::string stage, const std::string& what)
        : Error("[" + stage + "] " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace vitalwave
