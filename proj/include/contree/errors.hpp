#pragma once

#include <stdexcept>
#include <string>

namespace contree {

/// Malformed or invalid user input (graph files, automorphism files, node names).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// An operation was called on an input that violates its precondition
/// (for example the cut-pair machinery on a continuum with cut points).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A computed structure failed one of its own invariants. Always a bug in
/// an oracle or construction, never a property of the input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace contree
