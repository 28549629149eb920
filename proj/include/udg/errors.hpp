#pragma once

#include <stdexcept>

namespace udg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: non-finite coordinates, bad files, invalid graphs.
struct InputError : Error {
    using Error::Error;
};

// Parameter outside the problem's domain (e.g. k < 3 for cycle problems).
struct ParameterError : Error {
    using Error::Error;
};

// Contraction requested for a pair that is not contractible.
struct ContractionError : Error {
    using Error::Error;
};

// A decomposition handed to a DP does not satisfy its definition.
struct StructureError : Error {
    using Error::Error;
};

// A builder's precondition does not hold.
struct ConstructionError : Error {
    using Error::Error;
};

// An instance violates an algorithm's configuration precondition (e.g. a
// kernel window that still holds a cell of size >= k).
struct ConfigurationError : Error {
    using Error::Error;
};

// A brute-force oracle or search ran past its budget. Never a wrong answer.
struct BudgetError : Error {
    using Error::Error;
};

}  // namespace udg
