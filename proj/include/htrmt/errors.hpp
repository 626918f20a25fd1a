#pragma once

#include <stdexcept>
#include <string>

namespace htrmt {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments, mismatched rings, unsupported family/ring combinations.
class UsageError : public Error {
public:
    using Error::Error;
};

// A recurrence denominator vanishes at the supplied parameters.
class SingularParameterError : public Error {
public:
    SingularParameterError(const std::string& what, long index)
        : Error(what), index_(index) {}
    long index() const noexcept { return index_; }

private:
    long index_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class PrecisionError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

} // namespace htrmt
