#pragma once

#include <stdexcept>
#include <string>

namespace gsnoise {

/// Broad failure categories. The CLI maps each one to its own exit code.
enum class ErrorCategory {
    Config,     ///< malformed plan, bad flags, invalid engine parameters
    Dimension,  ///< shape mismatch between a tree/vector and its data
    Domain,     ///< objective evaluated outside its mathematical domain
    Degenerate, ///< zero-variance targets and similar singular inputs
    Io,         ///< file system or parse failures on persisted artifacts
};

const char* to_string(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(ErrorCategory::Dimension, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorCategory::Domain, what) {}
};

class DegenerateError : public Error {
public:
    explicit DegenerateError(const std::string& what) : Error(ErrorCategory::Degenerate, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCategory::Io, what) {}
};

} // namespace gsnoise
