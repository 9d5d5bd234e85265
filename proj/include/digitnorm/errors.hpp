#pragma once

#include <stdexcept>
#include <string>

namespace digitnorm {

// An emitted digit (or converted digit block) could not be certified correct
// at the precision on hand. The remedy is always the same: recompute the
// source value with more bits and retry.
class InsufficientPrecisionError : public std::runtime_error {
public:
    explicit InsufficientPrecisionError(const std::string& what)
        : std::runtime_error(what) {}
};

// Malformed digit files or digit strings.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Data-level failures: declared counts that do not match, counter
// disagreement, self-check mismatches.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what)
        : std::runtime_error(what) {}
};

// A series specification whose term ratio has a zero denominator on the
// requested index range.
class MalformedSeriesError : public std::runtime_error {
public:
    explicit MalformedSeriesError(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace digitnorm
