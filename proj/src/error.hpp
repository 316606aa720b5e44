#pragma once

#include <stdexcept>
#include <string>

namespace tvk {

enum class ErrorCode {
    InputError = 2,     // malformed files, bad arguments
    CheckFailure = 1,   // validation/verification failed
    MathError = 3,      // division by zero, singular matrix
    InternalError = 4,  // convention bug, broken invariant
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

} // namespace tvk
