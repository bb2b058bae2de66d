#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gjr {

/// Base class for every error raised by the library. `code()` is a short
/// machine-readable tag used by the CLI as the reason prefix.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    [[nodiscard]] const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class InvalidParams : public Error {
public:
    explicit InvalidParams(const std::string& what) : Error("invalid-params", what) {}
};

/// alpha + beta + lambda/2 >= 1: no unconditional variance.
class PersistenceError : public Error {
public:
    explicit PersistenceError(const std::string& what) : Error("persistence", what) {}
};

class DegenerateCovariance : public Error {
public:
    explicit DegenerateCovariance(const std::string& what)
        : Error("degenerate-covariance", what) {}
};

class ConstantSeries : public Error {
public:
    explicit ConstantSeries(const std::string& what) : Error("constant-series", what) {}
};

/// No self-consistent summation window below N/2; the chain is too short
/// relative to its autocorrelation time.
class WindowNotFound : public Error {
public:
    explicit WindowNotFound(const std::string& what) : Error("window-not-found", what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("parse", what), line_(line) {}

    /// 1-based line number in the offending file, 0 when not applicable.
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config", what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("io", what) {}
};

}  // namespace gjr
