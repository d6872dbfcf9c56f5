#pragma once

#include <stdexcept>
#include <string>

namespace gptdyn {

/// Shape mismatch, out-of-range label, bad parameter.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed config or transformation text. `line` is 1-based, 0 when unknown.
struct ParseError : std::runtime_error {
    ParseError(const std::string &what, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line(line) {}
    int line;
};

/// Well-formed input that violates a theory invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Request outside what the exact machinery supports (e.g. brute-force
/// facet enumeration above dimension 6, non-binary expectation rep).
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Valid states do not span the full d-dimensional space.
struct DegenerateTheoryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operation has no meaning for this state-space kind (e.g. LP stage on a ball).
struct NotApplicableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gptdyn
