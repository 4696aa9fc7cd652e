#pragma once

#include <stdexcept>

namespace sfncov {

// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed configuration: bad schema, out-of-range field, unknown key.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Argument outside an operation's mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Every SFN station transmits with zero power; the SINR is identically zero.
class AllPowersZeroError : public Error {
public:
    using Error::Error;
};

// A closed-form evaluation produced a raw value outside plausible bounds.
class NumericalInstabilityError : public Error {
public:
    using Error::Error;
};

// The power-allocation constraints cannot be met within the power caps.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

} // namespace sfncov
