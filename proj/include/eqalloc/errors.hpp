#pragma once

#include <stdexcept>
#include <string>

namespace eqalloc {

// Base of every error raised by the library. The CLI maps ValidationError to
// exit code 2 and every other Error to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or invariant-violating input (scenario, utility table, flags).
class ValidationError : public Error {
public:
    using Error::Error;
};

// An operation was called on a scenario shape it does not support (e.g. k != 1).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class UnreachableValue : public Error {
public:
    using Error::Error;
};

class IncompleteAllocation : public Error {
public:
    using Error::Error;
};

class NonConcaveUtility : public Error {
public:
    using Error::Error;
};

class LimitsExceeded : public Error {
public:
    using Error::Error;
};

class NonIntegerData : public Error {
public:
    using Error::Error;
};

class UnequalWeights : public Error {
public:
    using Error::Error;
};

class NonPowerUtility : public Error {
public:
    using Error::Error;
};

class VerificationFailed : public Error {
public:
    using Error::Error;
};

} // namespace eqalloc
