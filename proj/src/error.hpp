#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace vqremap {

// Error categories; values match the vqr_status codes of the public C API.
enum class ErrorCode : int {
    Config = 1,     // invalid or out-of-range configuration
    Usage = 2,      // unknown names, malformed option values
    Ingest = 3,     // dataset file failed validation
    Numeric = 4,    // non-finite or degenerate numeric input
    Index = 5,      // qubit/class index out of range
    Io = 6,         // filesystem failure
    Internal = 7,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string module, const std::string& message)
        : std::runtime_error(module + ": " + message),
          code_(code),
          module_(std::move(module)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorCode code_;
    std::string module_;
};

} // namespace vqremap
