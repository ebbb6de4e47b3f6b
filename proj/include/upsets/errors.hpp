#pragma once

#include <stdexcept>
#include <string>

namespace upsets {

// Exit codes used by the CLI; library errors map onto them.
enum class ExitCode : int {
    ok = 0,
    verification_failure = 1,
    usage_error = 2,
    capacity_error = 3,
};

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual ExitCode exit_code() const { return ExitCode::usage_error; }
};

// Bad user input: out-of-range element indices, unparseable files, bad flags.
struct MalformedInputError : Error {
    using Error::Error;
};

// Instance is too large for the requested exact computation.
struct CapacityError : Error {
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::capacity_error; }
};

// Operation needs a nontrivial family (measure strictly between 0 and 1).
struct UndefinedThresholdError : Error {
    using Error::Error;
};

// Requested target value lies outside the reachable range of the map being inverted.
struct UnreachableValueError : Error {
    using Error::Error;
};

// A documented precondition does not hold for the given arguments.
struct PreconditionError : Error {
    using Error::Error;
};

// "Cannot happen" guard: a dichotomy the algorithm relies on failed to certify.
struct InternalConsistencyError : Error {
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::verification_failure; }
};

}  // namespace upsets
