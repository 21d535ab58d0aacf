#pragma once

#include <stdexcept>
#include <string>

namespace cxt {

enum class ErrorCode {
    FINITE_TYPE_REQUIRED,
    NOT_REFLECTION_SUBGROUP,
    NOT_INVOLUTION,
    UNSUPPORTED_EXTENSION,
    CORRUPT_TABLE,
    NOT_A_COMPLEX,
    NOT_APPLICABLE,
    INVALID_ARGUMENT,
    INCONSISTENT,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* to_string(ErrorCode c)
{
    switch (c) {
    case ErrorCode::FINITE_TYPE_REQUIRED: return "FINITE_TYPE_REQUIRED";
    case ErrorCode::NOT_REFLECTION_SUBGROUP: return "NOT_REFLECTION_SUBGROUP";
    case ErrorCode::NOT_INVOLUTION: return "NOT_INVOLUTION";
    case ErrorCode::UNSUPPORTED_EXTENSION: return "UNSUPPORTED_EXTENSION";
    case ErrorCode::CORRUPT_TABLE: return "CORRUPT_TABLE";
    case ErrorCode::NOT_A_COMPLEX: return "NOT_A_COMPLEX";
    case ErrorCode::NOT_APPLICABLE: return "NOT_APPLICABLE";
    case ErrorCode::INVALID_ARGUMENT: return "INVALID_ARGUMENT";
    case ErrorCode::INCONSISTENT: return "INCONSISTENT";
    }
    return "UNKNOWN";
}

}  // namespace cxt
