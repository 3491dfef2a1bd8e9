#pragma once

#include <stdexcept>
#include <string>

namespace deltacon {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

/// Input exceeds a dense-storage or dense-eigensolver cap.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Fixed-point iteration did not reach the residual tolerance.
class SolverError : public Error {
public:
    SolverError(const std::string& msg, double last_residual)
        : Error(msg), last_residual_(last_residual) {}
    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

}  // namespace deltacon
