#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specbal {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments or inputs that violate a documented precondition.
struct InvalidInputError : Error {
    using Error::Error;
};

// An iterative routine ran out of budget. Carries enough state to decide
// whether to retry with a larger budget.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, int iterations_, double residual_)
        : Error(what), iterations(iterations_), residual(residual_) {}
    int iterations = 0;
    double residual = 0.0;
};

// Instance file rejected; row/col locate the offending matrix entry
// (-1 when the problem is not tied to a specific entry).
struct ParseError : Error {
    ParseError(const std::string& what, int matrix_index_ = -1, int row_ = -1, int col_ = -1)
        : Error(what), matrix_index(matrix_index_), row(row_), col(col_) {}
    int matrix_index = -1;
    int row = -1;
    int col = -1;
};

// Partial coloring exhausted all restarts and escalations.
struct SolverFailureError : Error {
    SolverFailureError(const std::string& what, double best_fraction_)
        : Error(what), best_fraction(best_fraction_) {}
    double best_fraction = 0.0;
};

}  // namespace specbal
