#pragma once

#include <stdexcept>
#include <string>

namespace hypefin {

// Configuration / usage problems (CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad or insufficient input data (CLI exit code 2).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file; carries the 1-based line number when known.
class ParseError : public DataError {
public:
    ParseError(const std::string& msg, long line)
        : DataError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    explicit ParseError(const std::string& msg) : DataError(msg), line_(0) {}
    long line() const { return line_; }

private:
    long line_;
};

} // namespace hypefin
