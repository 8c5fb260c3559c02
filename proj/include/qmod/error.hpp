#pragma once
#include <stdexcept>
#include <string>

namespace qmod {

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

// bad user input: files, presentations, flags
struct InputError : Error {
    using Error::Error;
};

// a documented precondition of an operation does not hold
struct PreconditionError : Error {
    using Error::Error;
};

// search budget exhausted without a certified answer; never a wrong answer
struct Inconclusive : Error {
    using Error::Error;
};

// an iterative construction hit its cap before stabilizing
struct CapExceeded : Error {
    using Error::Error;
};

} // namespace qmod
