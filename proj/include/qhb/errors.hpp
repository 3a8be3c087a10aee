#pragma once

#include <stdexcept>
#include <string>

namespace qhb {

// Base class for every error this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A (p, q) argument violates p > q >= 1, gcd(p, q) = 1, or p >= 2; also used
// for malformed continued-fraction and Markov-triple inputs.
class InvalidPair : public Error {
public:
    using Error::Error;
};

// A brute-force scan was requested beyond its guard bound.
class ModulusTooLarge : public Error {
public:
    using Error::Error;
};

// Checked 64-bit arithmetic left the representable range. Results are never
// silently wrapped.
class Overflow : public Error {
public:
    using Error::Error;
};

// No integer a_{n+1} makes the extended Gram matrix unimodular. Signals that
// the supplied c does not satisfy c^2 = +-(pq-1) mod p^2.
class NoUnimodularCompletion : public Error {
public:
    using Error::Error;
};

// An identity that is a theorem failed to verify: an implementation bug, not
// a user error.
class ConsistencyFailure : public Error {
public:
    using Error::Error;
};

} // namespace qhb
