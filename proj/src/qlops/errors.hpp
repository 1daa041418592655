#pragma once

#include <stdexcept>

namespace qlops {

// Error taxonomy shared by all modules.  The C API and the CLI map these
// onto status / exit codes, so new failure modes should reuse one of them.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qlops
