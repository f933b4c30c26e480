#pragma once

#include <stdexcept>
#include <string>

namespace ccc {

/// Broad failure classes. The CLI maps them onto exit codes and the HTTP
/// layer onto status codes.
enum class ErrorCategory {
    usage,     // bad flags, missing required inputs
    data,      // malformed or illegal input data (FEN, SAN, files)
    upstream,  // engine or LLM transport failures
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(ErrorCategory::usage, what) {}
};

class UpstreamError : public Error {
public:
    explicit UpstreamError(const std::string& what) : Error(ErrorCategory::upstream, what) {}
};

inline const char* category_name(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::usage: return "usage";
        case ErrorCategory::data: return "data";
        case ErrorCategory::upstream: return "upstream";
    }
    return "unknown";
}

}  // namespace ccc
