#pragma once

#include <stdexcept>
#include <string>

namespace im3 {

// Base class for all errors raised by the toolkit.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A stated identity of the underlying theory failed on verified input data.
// This is the strongest possible finding and is always reported with context.
struct TheoremViolation : Error {
    explicit TheoremViolation(const std::string& msg) : Error("theorem violation: " + msg) {}
};

// The prime is in the curve's bad list, or counts flagged it as suspect.
struct BadPrime : Error {
    explicit BadPrime(const std::string& msg) : Error("bad prime: " + msg) {}
};

// Division that must be exact over Z (or O_M) was not.
struct NonIntegralCoefficient : Error {
    explicit NonIntegralCoefficient(const std::string& msg)
        : Error("non-integral coefficient: " + msg) {}
};

// Operation outside the supported parameter range.
struct Unsupported : Error {
    explicit Unsupported(const std::string& msg) : Error("unsupported: " + msg) {}
};

}  // namespace im3
