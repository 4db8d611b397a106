#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pdc {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input data (non-finite entries, bad axes, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// The input is well formed but carries no usable signal (all-zero state, empty slice).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Measurement results that contradict the model (e.g. TBP below the Fourier limit).
class InconsistencyError : public Error {
public:
    using Error::Error;
};

/// Monotone inversion failed: target outside the curve or curve not monotone.
class InversionError : public Error {
public:
    using Error::Error;
};

/// Background estimation failed (no identifiable peak or no off-peak bins).
class BackgroundError : public Error {
public:
    using Error::Error;
};

/// Gaussian fit did not converge. Carries the direct half-maximum width as a fallback.
class FitError : public Error {
public:
    FitError(const std::string& what, double direct_fwhm)
        : Error(what), direct_fwhm_(direct_fwhm) {}
    double direct_fwhm() const noexcept { return direct_fwhm_; }

private:
    double direct_fwhm_;
};

/// Event-stream or matrix-file parse failure. `line` is 1-based for text input and
/// 0 for binary input; `offset` is the byte offset of the offending record.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::uint64_t offset)
        : Error(what + " (line " + std::to_string(line) + ", byte offset " +
                std::to_string(offset) + ")"),
          line_(line), offset_(offset) {}
    std::size_t line() const noexcept { return line_; }
    std::uint64_t offset() const noexcept { return offset_; }

private:
    std::size_t line_;
    std::uint64_t offset_;
};

/// Bad configuration file or value.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace pdc
