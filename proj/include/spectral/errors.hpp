#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spectral {

// Invalid physical or algorithmic parameters (b=0 for a soft seed, d<2, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation of a rational function at (or numerically indistinguishable from)
// a zero of its denominator.
struct EvalAtPole : std::runtime_error {
    explicit EvalAtPole(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computation detects that the working precision cannot support
// the requested output accuracy (overflow to inf/nan, or interval refinement
// hitting the representable resolution).
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Root bracketing failed: no sign change found in the search interval.
struct NoBracket : std::runtime_error {
    explicit NoBracket(const std::string& what) : std::runtime_error(what) {}
};

// A multistart nonlinear solve produced no admissible solution.
struct NoSolutionFound : std::runtime_error {
    explicit NoSolutionFound(const std::string& what) : std::runtime_error(what) {}
};

// Iteration failed to stabilize to the requested accuracy.  Subclasses may
// carry partial results; `last_values` holds the final iterates as strings
// for diagnostics.
struct NoConvergence : std::runtime_error {
    std::vector<std::string> last_values;
    explicit NoConvergence(const std::string& what,
                           std::vector<std::string> lv = {})
        : std::runtime_error(what), last_values(std::move(lv)) {}
};

}  // namespace spectral
