#pragma once

#include <stdexcept>
#include <string>

namespace barmc {

/* Bad user input: dimension mismatches, malformed scalars, wrong flags. */
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/* d squared is nonzero where a genuine complex was required. */
struct NotAComplex : std::runtime_error {
    explicit NotAComplex(const std::string& msg) : std::runtime_error(msg) {}
};

/* A truncation cap was consulted beyond its sound range. */
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

/* A solver stage failed; carries diagnostics assembled by the caller. */
struct StageError : std::runtime_error {
    explicit StageError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace barmc
