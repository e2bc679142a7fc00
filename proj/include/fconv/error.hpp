#pragma once

#include <stdexcept>
#include <string>

namespace fconv {

// Rejected arguments: bad grid sizes, mismatched grids, invalid spaces.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An operation was called outside its documented precondition.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// The requested combination is mathematically valid but not supported,
// e.g. the associate space of L^1.
class Unsupported : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A descriptor produced a non-finite value at a sample point.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A descriptor lacks the structure needed to decide the answer.
class Inconclusive : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An object could not be built from otherwise valid inputs.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative procedure stopped before reaching its tolerance. The last
// bracket [lower, upper] (or best value) is carried along.
class NoConvergence : public std::runtime_error {
public:
    NoConvergence(const std::string& what, double lower, double upper)
        : std::runtime_error(what), lower_(lower), upper_(upper) {}

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

private:
    double lower_;
    double upper_;
};

}  // namespace fconv
