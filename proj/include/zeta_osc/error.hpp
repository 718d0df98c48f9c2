#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zeta_osc {

// Domain violations (x <= 0, b <= 14, t <= 0, ...) are reported as
// std::domain_error and bad parameters as std::invalid_argument. The types
// below cover the remaining failure classes.

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CacheErrorKind { io, bad_magic, version_mismatch, truncated, checksum, malformed };

class CacheError : public std::runtime_error {
public:
    CacheError(CacheErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    CacheErrorKind kind() const noexcept { return kind_; }

private:
    CacheErrorKind kind_;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Zero counting at a Gram point disagreed with the scan, even after the
// densified re-scan. [lo, hi] is the Gram block that failed.
class MissedZeroError : public NumericError {
public:
    MissedZeroError(double lo, double hi, std::size_t expected, std::size_t found);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

}  // namespace zeta_osc
