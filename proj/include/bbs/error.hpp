#pragma once

#include <stdexcept>
#include <string>

namespace bbs {

// Error taxonomy shared by the library and the CLI (CLI maps every
// bbs::Error to exit code 1).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    using Error::Error;
};
struct ModeError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct NotInAError : Error {
    using Error::Error;
};
struct ConvergenceError : Error {
    using Error::Error;
};
struct TruncationError : Error {
    using Error::Error;
};
struct WindowError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct DegenerateError : Error {
    using Error::Error;
};

}  // namespace bbs
