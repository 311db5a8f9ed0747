#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mdisc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RingMismatch : public Error {
public:
    RingMismatch(std::string lhs, std::string rhs)
        : Error("ring mismatch: [" + lhs + "] vs [" + rhs + "]"),
          lhs_(std::move(lhs)),
          rhs_(std::move(rhs)) {}

    const std::string& lhs() const noexcept { return lhs_; }
    const std::string& rhs() const noexcept { return rhs_; }

private:
    std::string lhs_;
    std::string rhs_;
};

/// A polynomial variable was expected but does not occur (or is out of range).
class VariableAbsent : public Error {
public:
    using Error::Error;
};

class Cancelled : public Error {
public:
    Cancelled() : Error("computation cancelled") {}
};

}  // namespace mdisc
